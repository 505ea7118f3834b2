#include "output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "fpconvex/error.hpp"

namespace fpconvex::cli {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", x);
  return buffer;
}

namespace {

void dump(const Json& v, int depth, std::string& out) {
  const std::string indent(2 * static_cast<std::size_t>(depth + 1), ' ');
  const std::string close(2 * static_cast<std::size_t>(depth), ' ');
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& item : v.items()) {
        if (!first) out += ",\n";
        first = false;
        out += indent;
        out += Json(item.key()).dump();
        out += ": ";
        dump(item.value(), depth + 1, out);
      }
      out += "\n" + close + "}";
      return;
    }
    case Json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      bool flat = true;
      for (const auto& e : v) flat = flat && !e.is_structured();
      if (flat) {
        out += "[";
        for (std::size_t i = 0; i < v.size(); ++i) {
          if (i) out += ", ";
          dump(v[i], depth + 1, out);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",\n";
        out += indent;
        dump(v[i], depth + 1, out);
      }
      out += "\n" + close + "]";
      return;
    }
    case Json::value_t::number_float: {
      const double x = v.get<double>();
      out += std::isfinite(x) ? format_double(x) : "null";
      return;
    }
    default:
      out += v.dump();
      return;
  }
}

}  // namespace

std::string dump_json(const Json& value) {
  std::string out;
  dump(value, 0, out);
  out += "\n";
  return out;
}

Json to_json(const Eigen::VectorXd& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(number_or_null(v[i]));
  return out;
}

Json to_json(const std::vector<double>& v) {
  Json out = Json::array();
  for (double x : v) out.push_back(number_or_null(x));
  return out;
}

Json number_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

void write_text(const std::filesystem::path& file, const std::string& text) {
  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
  std::ofstream out(file, std::ios::binary);
  if (!out) throw Error("cannot write " + file.string());
  out << text;
  if (!out) throw Error("failed writing " + file.string());
}

void write_json(const std::filesystem::path& file, const Json& value) { write_text(file, dump_json(value)); }

CsvWriter::CsvWriter(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvWriter::add_row(const std::vector<double>& row) {
  if (row.size() != header_.size()) throw SizeMismatchError("CsvWriter: row width differs from the header");
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) body_ += ',';
    body_ += format_double(row[i]);
  }
  body_ += '\n';
}

std::string CsvWriter::str() const {
  std::string out;
  for (std::size_t i = 0; i < header_.size(); ++i) {
    if (i) out += ',';
    out += header_[i];
  }
  out += '\n';
  return out + body_;
}

void CsvWriter::write(const std::filesystem::path& file) const { write_text(file, str()); }

}  // namespace fpconvex::cli
