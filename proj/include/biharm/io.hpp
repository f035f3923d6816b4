#ifndef BIHARM_IO_HPP
#define BIHARM_IO_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "biharm/extremize.hpp"
#include "biharm/norms.hpp"
#include "biharm/profiles.hpp"
#include "biharm/refined.hpp"

namespace biharm::io {

using json = nlohmann::json;

/// Field container: a textual key-value header (dim, N, L, endianness,
/// layout) terminated by a `data` line, then interleaved re/im float64
/// little-endian in row-major lattice order.
void write_field(const std::filesystem::path& path, const Field& f);
Field read_field(const std::filesystem::path& path);

/// Numeric table with a named x column and per-column units, written with a
/// sidecar schema line after the header.
struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::string> units;  // one per column
  std::string x_column;
  std::vector<std::vector<double>> rows;

  void add_row(std::initializer_list<double> vals);
  void write(const std::filesystem::path& path) const;
  static CsvTable read(const std::filesystem::path& path);
};

json to_json(const NormReport& r);
json to_json(const RefinedReport& r);
json to_json(const Cap& c);
json to_json(const SymmetryParams& s);
json to_json(const OrthogonalityRecord& r);
json decomposition_manifest(const DecompositionResult& res);
json extremizer_report_json(const ExtremizerReport& r);

void write_json(const std::filesystem::path& path, const json& j);

/// One SVG line plot per y column of the table; log-log axes whenever both
/// coordinates are strictly positive throughout.  Returns the files written;
/// empty tables produce none.
std::vector<std::filesystem::path> emit_plots(const CsvTable& table,
                                              const std::filesystem::path& dir,
                                              const std::string& stem);

}  // namespace biharm::io

#endif
