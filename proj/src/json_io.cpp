#include "cmr/json_io.hpp"

#include <stdexcept>

#include "json.hpp"

namespace cmr {

using nlohmann::ordered_json;

namespace {

ordered_json header(std::size_t rows, std::size_t cols, int n, const char* mode) {
  ordered_json j;
  j["n"] = n;
  j["rows"] = rows;
  j["cols"] = cols;
  j["mode"] = mode;
  return j;
}

}  // namespace

std::string matrix_to_json(const CMatrix& m, int n) {
  auto j = header(m.rows(), m.cols(), n, "c64");
  auto entries = ordered_json::array();
  for (const auto& z : m.data()) entries.push_back({z.real(), z.imag()});
  j["entries"] = std::move(entries);
  return j.dump();
}

std::string matrix_to_json(const QMatrix& m, int n) {
  auto j = header(m.rows(), m.cols(), n, "exact");
  auto entries = ordered_json::array();
  for (const auto& z : m.data()) entries.push_back({to_fraction_string(z.real()), to_fraction_string(z.imag())});
  j["entries"] = std::move(entries);
  return j.dump();
}

namespace {

LoadedMatrix load(const ordered_json& j) {
  for (const char* key : {"n", "rows", "cols", "mode", "entries"})
    if (!j.contains(key)) throw std::invalid_argument(std::string("matrix json: missing key ") + key);
  LoadedMatrix out;
  out.n = j["n"].get<int>();
  const auto rows = j["rows"].get<std::size_t>();
  const auto cols = j["cols"].get<std::size_t>();
  const auto mode = j["mode"].get<std::string>();
  const auto& entries = j["entries"];
  if (!entries.is_array() || entries.size() != rows * cols)
    throw std::invalid_argument("matrix json: entries do not match rows × cols");
  if (mode == "c64") {
    out.c = CMatrix(rows, cols);
    for (std::size_t i = 0; i < entries.size(); ++i)
      out.c(i / cols, i % cols) = Complex(entries[i].at(0).get<double>(), entries[i].at(1).get<double>());
  } else if (mode == "exact") {
    out.exact = true;
    out.q = QMatrix(rows, cols);
    for (std::size_t i = 0; i < entries.size(); ++i)
      out.q(i / cols, i % cols) = GaussRational(parse_fraction(entries[i].at(0).get<std::string>()),
                                      parse_fraction(entries[i].at(1).get<std::string>()));
  } else {
    throw std::invalid_argument("matrix json: unknown mode " + mode);
  }
  return out;
}

}  // namespace

LoadedMatrix matrix_from_json(const std::string& text) {
  try {
    return load(ordered_json::parse(text));
  } catch (const ordered_json::exception& e) {
    throw std::invalid_argument(std::string("matrix json: ") + e.what());
  }
}

}  // namespace cmr
