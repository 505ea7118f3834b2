#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <nlohmann/json.hpp>

namespace fpconvex::cli {

using Json = nlohmann::ordered_json;

/// %.17g; non-finite values become "nan", "inf" or "-inf".
std::string format_double(double x);

/// Pretty-printed JSON with keys in insertion order, two-space indentation
/// and floating point numbers at 17 significant digits. Non-finite numbers
/// are written as null.
std::string dump_json(const Json& value);

Json to_json(const Eigen::VectorXd& v);
Json to_json(const std::vector<double>& v);
/// A number, or null when x is not finite.
Json number_or_null(double x);

void write_text(const std::filesystem::path& file, const std::string& text);
void write_json(const std::filesystem::path& file, const Json& value);

/// Comma-separated table with a header row; numbers at 17 significant digits.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);
  void add_row(const std::vector<double>& row);
  std::string str() const;
  void write(const std::filesystem::path& file) const;

 private:
  std::vector<std::string> header_;
  std::string body_;
};

}  // namespace fpconvex::cli
