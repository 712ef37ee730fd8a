#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "botdet/detection_config.hpp"
#include "botdet/types.hpp"

namespace botdet {

struct ParseError {
  std::size_t line = 0;
  std::string reason;

  bool operator==(const ParseError&) const = default;
};

using ParseResult = std::variant<Alert, ParseError>;

/// Snort "fast" alert line:
///   MM/DD[/YY]-HH:MM:SS.ffffff [**] [gid:sid:rev] NAME [**] [Classification: ...]
///   [Priority: N] {PROTO} SRC[:SPORT] -> DST[:DPORT]
/// `year` supplies the year when the record carries none. The returned alert
/// has id 0 and underived direction/kind.
ParseResult parse_fast_alert(std::string_view line, int year, std::size_t line_no = 0);

/// One CSV row mapped through `columns` (see default_csv_columns()). Fields
/// may be double-quoted with "" escapes. Unknown column names are ignored.
ParseResult parse_csv_alert(std::string_view row, std::span<const std::string> columns, int year,
                            std::size_t line_no = 0);

std::string format_fast_alert(const Alert& a);
std::string format_csv_alert(const Alert& a, std::span<const std::string> columns);

Direction classify_direction(const Alert& a, std::span<const Cidr> internal_nets);

struct AlertKind {
  Kind kind = Kind::Other;
  std::string bound_rule;  // signature id that matched; empty for Kind::Other

  bool operator==(const AlertKind&) const = default;
};

AlertKind bind_kind(const Alert& a, const DetectionConfig& cfg);

/// Fills the derived direction and kind of every alert.
void annotate(std::vector<Alert>& alerts, const DetectionConfig& cfg);

enum class InputFormat { Auto, Fast, Csv };

std::optional<InputFormat> input_format_from_string(std::string_view s);

/// Decides between fast and CSV from the first non-blank record.
InputFormat sniff_format(std::string_view first_record);

class IngestError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct IngestResult {
  std::vector<Alert> alerts;  // ids 1..n in input order, annotated
  std::vector<ParseError> errors;
  std::size_t records = 0;  // lines examined
};

/// Parses every line of `in`. Under MalformedPolicy::Abort the first parse
/// error throws IngestError; under Skip it is recorded and counted.
IngestResult ingest_stream(std::istream& in, InputFormat format, const DetectionConfig& cfg);

/// Plain text or gzip (detected by magic bytes).
IngestResult ingest_file(const std::filesystem::path& path, InputFormat format,
                         const DetectionConfig& cfg);

}  // namespace botdet
