#include "emkdv/io.hpp"

#include <openssl/evp.h>

#include <array>
#include <charconv>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "emkdv/error.hpp"

namespace emkdv {

namespace {

[[noreturn]] void io_fail(const std::string& op, const std::string& what) {
  throw Error(ErrorKind::io_failure, "harness_cli", op, what);
}

std::string cell_text(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  return std::get<std::string>(c);
}

}  // namespace

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) io_fail("export", "cannot open '" + path + "' for writing");
  out << text;
  if (!out) io_fail("export", "write to '" + path + "' failed");
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) io_fail("read", "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void export_table(const Table& table, Format format, const std::string& path) {
  if (table.rows.empty()) io_fail("export", "refusing to export an empty table to '" + path + "'");
  for (const auto& r : table.rows)
    if (r.size() != table.header.size()) io_fail("export", "ragged table");
  std::string text;
  if (format == Format::csv) {
    std::ostringstream out;
    for (std::size_t j = 0; j < table.header.size(); ++j) out << (j ? "," : "") << table.header[j];
    out << '\n';
    for (const auto& r : table.rows) {
      for (std::size_t j = 0; j < r.size(); ++j) out << (j ? "," : "") << cell_text(r[j]);
      out << '\n';
    }
    text = out.str();
  } else {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& r : table.rows) {
      nlohmann::ordered_json obj = nlohmann::ordered_json::object();
      for (std::size_t j = 0; j < r.size(); ++j)
        std::visit([&](const auto& v) { obj[table.header[j]] = v; }, r[j]);
      rows.push_back(std::move(obj));
    }
    text = nlohmann::ordered_json{{"columns", table.header}, {"rows", rows}}.dump(1) + "\n";
  }
  write_text(path, text);
}

std::string sha256_hex(const std::string& bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md.data(), &len, EVP_sha256(), nullptr) != 1)
    io_fail("sha256", "digest failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

std::string sha256_file(const std::string& path) { return sha256_hex(read_text(path)); }

Table scattering_table(const ReflectionData& d) {
  Table t{{"k", "re_a", "im_a", "re_b", "im_b", "re_r", "im_r"}, {}};
  for (std::size_t i = 0; i < d.k.size(); ++i)
    t.rows.push_back({d.k[i], d.a[i].real(), d.a[i].imag(), d.b[i].real(), d.b[i].imag(),
                      d.r[i].real(), d.r[i].imag()});
  return t;
}

ReflectionData read_scattering_csv(const std::string& path) {
  std::istringstream in(read_text(path));
  std::string line;
  std::getline(in, line);
  if (line != "k,re_a,im_a,re_b,im_b,re_r,im_r")
    throw Error(ErrorKind::config_error, "harness_cli", "read_scattering_csv",
                "unexpected header in '" + path + "'");
  ReflectionData d;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::array<double, 7> v{};
    const char* p = line.data();
    const char* end = line.data() + line.size();
    for (std::size_t j = 0; j < v.size(); ++j) {
      const auto res = std::from_chars(p, end, v[j]);
      if (res.ec != std::errc() || (j + 1 < v.size() && (res.ptr == end || *res.ptr != ',')))
        throw Error(ErrorKind::config_error, "harness_cli", "read_scattering_csv",
                    "malformed row '" + line + "'");
      p = res.ptr + 1;
    }
    d.k.push_back(v[0]);
    d.a.emplace_back(v[1], v[2]);
    d.b.emplace_back(v[3], v[4]);
    d.r.emplace_back(v[5], v[6]);
  }
  if (d.k.size() < 4)
    throw Error(ErrorKind::config_error, "harness_cli", "read_scattering_csv", "too few rows");
  d.step = (d.k.back() - d.k.front()) / double(d.k.size() - 1);
  d.profile_available = false;
  return d;
}

}  // namespace emkdv
