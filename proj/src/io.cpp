#include "biharm/io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

namespace biharm::io {

static_assert(std::endian::native == std::endian::little,
              "field files are little-endian; big-endian hosts are unsupported");

void write_field(const std::filesystem::path& path, const Field& f) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw schema_error("cannot open " + path.string() + " for writing");
  const GridSpec& g = f.grid();
  out << "biharm-field 1\n"
      << "dim " << g.dim << "\n"
      << "N " << g.points_per_axis << "\n";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", g.box_length);
  out << "L " << buf << "\n"
      << "endianness little\n"
      << "layout row-major\n"
      << "data\n";
  std::vector<double> interleaved(2 * f.values().size());
  for (std::size_t i = 0; i < f.values().size(); ++i) {
    interleaved[2 * i] = f.values()[i].real();
    interleaved[2 * i + 1] = f.values()[i].imag();
  }
  out.write(reinterpret_cast<const char*>(interleaved.data()),
            static_cast<std::streamsize>(interleaved.size() * sizeof(double)));
  if (!out) throw schema_error("short write to " + path.string());
}

Field read_field(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw schema_error("cannot open field file " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != "biharm-field 1")
    throw schema_error("not a biharm field file: " + path.string());
  int dim = 0, N = 0;
  double L = 0.0;
  bool saw_data = false;
  while (std::getline(in, line)) {
    if (line == "data") { saw_data = true; break; }
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "dim") ls >> dim;
    else if (key == "N") ls >> N;
    else if (key == "L") ls >> L;
    else if (key == "endianness") {
      std::string v; ls >> v;
      if (v != "little") throw schema_error("unsupported endianness " + v);
    } else if (key == "layout") {
      std::string v; ls >> v;
      if (v != "row-major") throw schema_error("unsupported layout " + v);
    } else {
      throw schema_error("unknown field header key: " + key);
    }
  }
  if (!saw_data) throw schema_error("field file missing data section");
  GridSpec g(dim, N, L);
  const std::size_t n = g.npoints();
  std::vector<double> interleaved(2 * n);
  in.read(reinterpret_cast<char*>(interleaved.data()),
          static_cast<std::streamsize>(interleaved.size() * sizeof(double)));
  if (static_cast<std::size_t>(in.gcount()) != interleaved.size() * sizeof(double))
    throw schema_error("field file element count mismatch in " + path.string());
  char extra;
  if (in.read(&extra, 1))
    throw schema_error("field file has trailing bytes: " + path.string());
  std::vector<cd> values(n);
  for (std::size_t i = 0; i < n; ++i)
    values[i] = cd(interleaved[2 * i], interleaved[2 * i + 1]);
  return Field::from_values(g, std::move(values));
}

void CsvTable::add_row(std::initializer_list<double> vals) {
  rows.emplace_back(vals);
}

void CsvTable::write(const std::filesystem::path& path) const {
  if (columns.empty()) throw schema_error("csv table without columns");
  if (!units.empty() && units.size() != columns.size())
    throw schema_error("csv units do not match columns");
  std::ofstream out(path);
  if (!out) throw schema_error("cannot open " + path.string() + " for writing");
  for (std::size_t i = 0; i < columns.size(); ++i)
    out << (i ? "," : "") << columns[i];
  out << "\n# schema: x=" << (x_column.empty() ? columns.front() : x_column)
      << "; units:";
  for (std::size_t i = 0; i < columns.size(); ++i)
    out << (i ? "," : " ") << columns[i] << "="
        << (units.empty() || units[i].empty() ? "1" : units[i]);
  out << "\n";
  char buf[64];
  for (const auto& row : rows) {
    if (row.size() != columns.size()) throw schema_error("csv row width mismatch");
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", row[i]);
      out << (i ? "," : "") << buf;
    }
    out << "\n";
  }
}

CsvTable CsvTable::read(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw schema_error("cannot open csv " + path.string());
  CsvTable t;
  std::string line;
  if (!std::getline(in, line)) throw schema_error("empty csv " + path.string());
  std::istringstream hs(line);
  std::string cell;
  while (std::getline(hs, cell, ',')) t.columns.push_back(cell);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto xpos = line.find("x=");
      if (xpos != std::string::npos) {
        auto end = line.find(';', xpos);
        t.x_column = line.substr(xpos + 2, end == std::string::npos
                                               ? std::string::npos
                                               : end - xpos - 2);
      }
      continue;
    }
    std::istringstream ls(line);
    std::vector<double> row;
    while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
    if (row.size() != t.columns.size())
      throw schema_error("csv row width mismatch in " + path.string());
    t.rows.push_back(std::move(row));
  }
  return t;
}

json to_json(const NormReport& r) {
  return json{{"value", r.value},
              {"quadrature_estimate", r.quadrature_estimate},
              {"tail_bound", r.tail_bound},
              {"refinement_delta", r.refinement_delta},
              {"tail_fit_constant", r.tail_fit_constant},
              {"tail_fit_exponent", r.tail_fit_exponent},
              {"tail_divergent", r.tail_divergent},
              {"aliasing_headroom_ok", r.aliasing_headroom_ok},
              {"window_warning", r.window_warning}};
}

json to_json(const Cap& c) {
  return json{{"center", c.center}, {"radius", c.radius}};
}

json to_json(const SymmetryParams& s) {
  return json{{"h", s.h}, {"xi", s.xi}, {"x0", s.x0}, {"t0", s.t0}, {"mu", s.mu}};
}

json to_json(const RefinedReport& r) {
  return json{{"best_cap", to_json(r.best_cap)},
              {"cap_functional", r.cap_functional},
              {"strichartz_value", r.strichartz_value},
              {"rhs_bound", r.rhs_bound},
              {"ratio", r.ratio}};
}

json to_json(const OrthogonalityRecord& r) {
  return json{{"scale_jk", r.scale_jk},
              {"scale_kj", r.scale_kj},
              {"modulation_gap", r.modulation_gap},
              {"quartic_time", r.quartic_time},
              {"quadratic_time", r.quadratic_time},
              {"translation_drift", r.translation_drift},
              {"total", r.total()}};
}

json decomposition_manifest(const DecompositionResult& res) {
  json profiles = json::array();
  for (const auto& p : res.profiles)
    profiles.push_back(json{
        {"params", to_json(p.params)},
        {"energy", p.energy},
        {"classification",
         p.classification == Profile::Modulation::xi_zero ? "xi_zero" : "xi_large"}});
  return json{{"profiles", profiles},
              {"input_norm", res.input_norm},
              {"residual_norm", res.residual.l2_norm()},
              {"final_strichartz", res.final_strichartz},
              {"stagnated", res.stagnated},
              {"reached_max_profiles", res.reached_max_profiles},
              {"energy_ledger_defect", res.energy_ledger_defect()}};
}

json extremizer_report_json(const ExtremizerReport& r) {
  return json{{"ratio", r.ratio},
              {"iterations", r.iterates.size()},
              {"converged", r.converged},
              {"monotone", r.monotone},
              {"degenerate", r.degenerate},
              {"propagator", r.propagator_tag}};
}

void write_json(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw schema_error("cannot open " + path.string() + " for writing");
  out << j.dump(2) << "\n";
}

namespace {

struct Extent {
  double lo = 0.0, hi = 1.0;
  bool log = false;
  double map(double v, double pix_lo, double pix_hi) const {
    const double a = log ? std::log10(v) : v;
    const double l = log ? std::log10(lo) : lo;
    const double h = log ? std::log10(hi) : hi;
    const double t = (h - l) > 0 ? (a - l) / (h - l) : 0.5;
    return pix_lo + t * (pix_hi - pix_lo);
  }
};

}  // namespace

std::vector<std::filesystem::path> emit_plots(const CsvTable& table,
                                              const std::filesystem::path& dir,
                                              const std::string& stem) {
  std::vector<std::filesystem::path> written;
  if (table.rows.empty()) {
    std::fprintf(stderr, "emit_plots: empty table %s, nothing to plot\n", stem.c_str());
    return written;
  }
  std::size_t xcol = 0;
  for (std::size_t i = 0; i < table.columns.size(); ++i)
    if (table.columns[i] == table.x_column) xcol = i;
  for (std::size_t ycol = 0; ycol < table.columns.size(); ++ycol) {
    if (ycol == xcol) continue;
    std::vector<std::pair<double, double>> pts;
    for (const auto& row : table.rows) pts.emplace_back(row[xcol], row[ycol]);
    bool pos = true;
    for (auto& [x, y] : pts)
      if (x <= 0.0 || y <= 0.0) pos = false;
    Extent ex, ey;
    ex.log = ey.log = pos;
    ex.lo = ex.hi = pts.front().first;
    ey.lo = ey.hi = pts.front().second;
    for (auto& [x, y] : pts) {
      ex.lo = std::min(ex.lo, x); ex.hi = std::max(ex.hi, x);
      ey.lo = std::min(ey.lo, y); ey.hi = std::max(ey.hi, y);
    }
    if (ex.hi == ex.lo) { ex.hi += 1.0; ex.lo -= ex.log ? 0.0 : 1.0; }
    if (ey.hi == ey.lo) { ey.hi *= ey.log ? 10.0 : 1.0; ey.hi += ey.log ? 0.0 : 1.0; ey.lo -= ey.log ? 0.0 : 1.0; }
    const double W = 640, H = 420, ml = 70, mr = 20, mt = 20, mb = 50;
    std::ostringstream svg;
    svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H
        << "'>\n<rect width='100%' height='100%' fill='white'/>\n"
        << "<line x1='" << ml << "' y1='" << H - mb << "' x2='" << W - mr << "' y2='"
        << H - mb << "' stroke='black'/>\n"
        << "<line x1='" << ml << "' y1='" << mt << "' x2='" << ml << "' y2='" << H - mb
        << "' stroke='black'/>\n";
    svg << "<polyline fill='none' stroke='#1f6fb2' stroke-width='1.5' points='";
    for (auto& [x, y] : pts)
      svg << ex.map(x, ml, W - mr) << "," << ey.map(y, H - mb, mt) << " ";
    svg << "'/>\n";
    svg << "<text x='" << (W / 2) << "' y='" << (H - 12) << "' font-size='13'>"
        << table.columns[xcol] << (pos ? " (log)" : "") << "</text>\n"
        << "<text x='14' y='" << (H / 2) << "' font-size='13' transform='rotate(-90 14 "
        << (H / 2) << ")'>" << table.columns[ycol] << (pos ? " (log)" : "")
        << "</text>\n</svg>\n";
    const auto path = dir / (stem + "_" + table.columns[ycol] + ".svg");
    std::ofstream out(path);
    out << svg.str();
    written.push_back(path);
  }
  return written;
}

}  // namespace biharm::io
