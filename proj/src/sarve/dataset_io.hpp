#ifndef SARVE_DATASET_IO_HPP
#define SARVE_DATASET_IO_HPP

#include <filesystem>
#include <string>
#include <string_view>

#include "sarve/model.hpp"

namespace sarve {

inline constexpr std::string_view kFormatMagic = "sarve-dataset";
inline constexpr int kFormatVersion = 1;

class ParseError : public Error {
 public:
  ParseError(std::string source, int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Serializes to the dataset text format (see FORMAT.md).
std::string to_dataset_text(const ConferenceInstance& conf);

/// Parses the dataset text format. Checks syntax and field-level bounds
/// (integers, rating range) but not referential integrity; run validate()
/// for that. `source` names the input in diagnostics.
ConferenceInstance parse_dataset(std::string_view text, std::string_view source = "<memory>");

/// Reads and parses a file without validating it.
ConferenceInstance read_dataset(const std::filesystem::path& path);

/// read_dataset() followed by require_valid().
ConferenceInstance load(const std::filesystem::path& path);

void save(const ConferenceInstance& conf, const std::filesystem::path& path);

/// 16 hex digits of FNV-1a over the serialized form; stable across platforms.
std::string dataset_id(const ConferenceInstance& conf);

std::string ratings_csv(const ConferenceInstance& conf);

/// Contact log as CSV, with each pair's tie strength.
std::string contacts_csv(const ConferenceInstance& conf);

/// Quotes a CSV field when it holds a comma, quote or newline.
std::string csv_field(std::string_view s);

/// Shortest round-trip decimal form of a double.
std::string format_double(double v);

}  // namespace sarve

#endif  // SARVE_DATASET_IO_HPP
