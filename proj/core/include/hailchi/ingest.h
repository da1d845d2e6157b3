#ifndef HAILCHI_INGEST_H_
#define HAILCHI_INGEST_H_

#include <chrono>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hailchi/hail_event.h"

namespace hailchi {

// A data row as read from disk, before conversion.
struct RawRecord {
  std::size_t line_number = 1;
  std::map<std::string, std::string> fields;  // upper-cased column -> text
};

struct SkippedRow {
  std::size_t line_number;
  std::string reason;  // "missing-field", "bad-time", "missing-date",
                       // "bad-coordinate", "bad-prob"
  friend bool operator==(const SkippedRow&, const SkippedRow&) = default;
};

struct Dataset {
  std::vector<HailEvent> events;
  std::string source;
  std::vector<SkippedRow> skipped;
};

struct CsvOptions {
  // Date for rows whose time column is a bare HH:MM:SS.
  std::optional<std::chrono::sys_days> date;
  std::string source = "<stream>";
};

/// Reads hail events from CSV with a header row. Recognized columns
/// (case-insensitive): ZTIME or TIME, LON, LAT, SEVPROB or PROB (SEVPROB wins
/// when both exist). Probabilities above 1 are percentages. Bad rows are
/// recorded in Dataset::skipped. Throws DataError when a required column is
/// missing or no row parses.
Dataset parse_csv(std::istream& in, const CsvOptions& options = {});
Dataset parse_csv_text(std::string_view text, const CsvOptions& options = {});
Dataset load_csv_file(const std::string& path, const CsvOptions& options = {});

/// Writes `ZTIME,LON,LAT,PROB` with ISO-8601 UTC times and shortest
/// round-trip decimals. Throws DataError for an empty dataset.
std::string write_csv(const Dataset& dataset);

std::string format_timestamp(Timestamp t);  // YYYY-MM-DDTHH:MM:SSZ
/// ISO-8601 ("T" or space separator, optional Z) or compact YYYYMMDDHHMMSS.
std::optional<Timestamp> parse_timestamp(std::string_view text);
std::optional<std::chrono::sys_days> parse_date(std::string_view text);  // YYYY-MM-DD

// ---------------------------------------------------------------------------
// Severe Weather Data Inventory client.

inline constexpr std::string_view kDefaultSwdiBase = "http://www.ncdc.noaa.gov/swdiws";

class TransportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Connection could not be made or was interrupted.
class NetworkError : public TransportError {
 public:
  using TransportError::TransportError;
};

class HttpStatusError : public TransportError {
 public:
  HttpStatusError(const std::string& what, int status) : TransportError(what), status_(status) {}
  int status() const { return status_; }

 private:
  int status_;
};

class EmptyBodyError : public TransportError {
 public:
  using TransportError::TransportError;
};

struct SwdiOptions {
  std::string product = "hail";
  std::chrono::seconds timeout{30};
};

/// Builds `<base>/csv/<product>/<YYYYMMDD>:<YYYYMMDD>`.
std::string swdi_url(std::string_view start_date, std::string_view end_date,
                     std::string_view endpoint_base, const SwdiOptions& options = {});

/// One HTTP GET against the SWDI CSV endpoint; returns the body unparsed.
/// Dates are ISO YYYY-MM-DD; start > end throws DomainError before any
/// network activity. No retries.
std::string fetch_swdi(std::string_view start_date, std::string_view end_date,
                       std::string_view endpoint_base = kDefaultSwdiBase,
                       const SwdiOptions& options = {});

}  // namespace hailchi

#endif  // HAILCHI_INGEST_H_
