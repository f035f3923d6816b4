#include "biharm/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace biharm::fft {

namespace {

struct PlanKey {
  int dim, n, sign;
  bool operator<(const PlanKey& o) const {
    if (dim != o.dim) return dim < o.dim;
    if (n != o.n) return n < o.n;
    return sign < o.sign;
  }
};

// FFTW planning is not thread safe; executions via fftw_execute_dft are.
std::mutex plan_mutex;
std::map<PlanKey, fftw_plan> plan_cache;

fftw_plan get_plan(const GridSpec& g, int sign) {
  std::lock_guard<std::mutex> lock(plan_mutex);
  PlanKey key{g.dim, g.points_per_axis, sign};
  auto it = plan_cache.find(key);
  if (it != plan_cache.end()) return it->second;
  std::vector<int> n(g.dim, g.points_per_axis);
  std::vector<cd> a(g.npoints()), b(g.npoints());
  fftw_plan p = fftw_plan_dft(g.dim, n.data(),
                              reinterpret_cast<fftw_complex*>(a.data()),
                              reinterpret_cast<fftw_complex*>(b.data()),
                              sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
  plan_cache.emplace(key, p);
  return p;
}

inline int log2_int(int n) {
  int b = 0;
  while ((1 << b) < n) ++b;
  return b;
}

// The lattice is centered at -L/2, which shows up as a (-1)^{k1+...+kd}
// twiddle relative to the plain DFT.  N is a power of two, so in the
// row-major flat index each axis occupies a disjoint bit field and the
// parity of the axis-index sum is an XOR of fixed bits.
inline bool odd_parity(std::size_t flat, int bits, int dim) {
  std::size_t x = flat ^ (flat >> bits);
  if (dim == 3) x ^= flat >> (2 * bits);
  return x & 1u;
}

}  // namespace

void forward(const GridSpec& g, const cd* in, cd* out) {
  fftw_plan p = get_plan(g, FFTW_FORWARD);
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(const_cast<cd*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
  const double scale = g.cell_volume();
  const std::size_t n = g.npoints();
  const int bits = log2_int(g.points_per_axis);
  for (std::size_t i = 0; i < n; ++i)
    out[i] *= odd_parity(i, bits, g.dim) ? -scale : scale;
}

void inverse(const GridSpec& g, const cd* in, cd* out) {
  const std::size_t n = g.npoints();
  const int bits = log2_int(g.points_per_axis);
  std::vector<cd> tmp(n);
  for (std::size_t i = 0; i < n; ++i)
    tmp[i] = odd_parity(i, bits, g.dim) ? -in[i] : in[i];
  fftw_plan p = get_plan(g, FFTW_BACKWARD);
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(tmp.data()),
                   reinterpret_cast<fftw_complex*>(out));
  const double scale = 1.0 / std::pow(g.box_length, g.dim);
  for (std::size_t i = 0; i < n; ++i) out[i] *= scale;
}

void forward(const GridSpec& g, const std::vector<cd>& in, std::vector<cd>& out) {
  out.resize(in.size());
  forward(g, in.data(), out.data());
}

void inverse(const GridSpec& g, const std::vector<cd>& in, std::vector<cd>& out) {
  out.resize(in.size());
  inverse(g, in.data(), out.data());
}

}  // namespace biharm::fft
