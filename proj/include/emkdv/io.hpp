#pragma once

#include <string>
#include <variant>
#include <vector>

#include "emkdv/spectral_scattering.hpp"

namespace emkdv {

/// Shortest decimal string that round-trips to the same double.
std::string format_double(double v);

using Cell = std::variant<double, long long, std::string>;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

enum class Format { csv, json };

/// Deterministic export: fixed column order, shortest round-trip floats.
/// IoFailure on an empty table or an unwritable path.
void export_table(const Table& table, Format format, const std::string& path);

void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);

std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::string& path);

/// CSV with header k,re_a,im_a,re_b,im_b,re_r,im_r.
Table scattering_table(const ReflectionData& data);

/// Reads the CSV written from scattering_table.  The datum is not stored, so
/// the result cannot be continued off the real axis.
ReflectionData read_scattering_csv(const std::string& path);

}  // namespace emkdv
