#include "hailchi/ingest.h"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>

#include "hailchi/error.h"

namespace hailchi {
namespace {

using namespace std::chrono;

std::string_view trim(std::string_view s) {
  constexpr std::string_view kSpace = " \t\r\n";
  const auto first = s.find_first_not_of(kSpace);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(kSpace);
  s = s.substr(first, last - first + 1);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

std::string upper(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(c >= 'a' && c <= 'z' ? c - 'a' + 'A' : c);
  });
  return out;
}

// Locale-independent: from_chars accepts only the C decimal format.
std::optional<double> parse_double(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

std::optional<int> parse_digits(std::string_view s) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    return std::nullopt;
  }
  int value = 0;
  std::from_chars(s.data(), s.data() + s.size(), value);
  return value;
}

std::optional<seconds> parse_clock(std::string_view s) {
  if (s.size() != 8 || s[2] != ':' || s[5] != ':') return std::nullopt;
  const auto h = parse_digits(s.substr(0, 2));
  const auto m = parse_digits(s.substr(3, 2));
  const auto sec = parse_digits(s.substr(6, 2));
  if (!h || !m || !sec || *h > 23 || *m > 59 || *sec > 60) return std::nullopt;
  return hours(*h) + minutes(*m) + seconds(*sec);
}

std::optional<sys_days> make_date(std::optional<int> y, std::optional<int> m,
                                  std::optional<int> d) {
  if (!y || !m || !d) return std::nullopt;
  const year_month_day ymd{year{*y}, month{static_cast<unsigned>(*m)},
                           day{static_cast<unsigned>(*d)}};
  if (!ymd.ok()) return std::nullopt;
  return sys_days{ymd};
}

void append_shortest(std::string& out, double value) {
  std::array<char, 64> buffer{};
  const auto [ptr, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  out.append(buffer.data(), ptr);
}

struct Columns {
  std::size_t time, lon, lat, prob;
};

Columns locate_columns(const std::vector<std::string>& header, const std::string& source) {
  auto find = [&](std::initializer_list<std::string_view> names) -> std::optional<std::size_t> {
    for (std::string_view name : names) {
      const auto it = std::find(header.begin(), header.end(), name);
      if (it != header.end()) return static_cast<std::size_t>(it - header.begin());
    }
    return std::nullopt;
  };
  const auto time = find({"ZTIME", "TIME"});
  const auto lon = find({"LON"});
  const auto lat = find({"LAT"});
  const auto prob = find({"SEVPROB", "PROB"});
  std::string missing;
  if (!time) missing += " ZTIME|TIME";
  if (!lon) missing += " LON";
  if (!lat) missing += " LAT";
  if (!prob) missing += " PROB|SEVPROB";
  if (!missing.empty()) {
    throw DataError(source + ": header is missing required column(s):" + missing);
  }
  return {*time, *lon, *lat, *prob};
}

}  // namespace

std::optional<sys_days> parse_date(std::string_view s) {
  s = trim(s);
  if (s.size() == 10 && s[4] == '-' && s[7] == '-') {
    return make_date(parse_digits(s.substr(0, 4)), parse_digits(s.substr(5, 2)),
                     parse_digits(s.substr(8, 2)));
  }
  if (s.size() == 8) {
    return make_date(parse_digits(s.substr(0, 4)), parse_digits(s.substr(4, 2)),
                     parse_digits(s.substr(6, 2)));
  }
  return std::nullopt;
}

std::optional<Timestamp> parse_timestamp(std::string_view s) {
  s = trim(s);
  if (!s.empty() && (s.back() == 'Z' || s.back() == 'z')) s.remove_suffix(1);
  if (s.size() == 14) {  // YYYYMMDDHHMMSS
    const auto date = parse_date(s.substr(0, 8));
    const auto h = parse_digits(s.substr(8, 2));
    const auto m = parse_digits(s.substr(10, 2));
    const auto sec = parse_digits(s.substr(12, 2));
    if (!date || !h || !m || !sec || *h > 23 || *m > 59 || *sec > 60) return std::nullopt;
    return Timestamp{*date} + hours(*h) + minutes(*m) + seconds(*sec);
  }
  if (s.size() == 19 && (s[10] == 'T' || s[10] == ' ')) {
    const auto date = parse_date(s.substr(0, 10));
    const auto clock = parse_clock(s.substr(11));
    if (!date || !clock) return std::nullopt;
    return Timestamp{*date} + *clock;
  }
  return std::nullopt;
}

std::string format_timestamp(Timestamp t) {
  const sys_days day_point = floor<days>(t);
  const year_month_day ymd{day_point};
  const hh_mm_ss clock{t - day_point};
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%04d-%02u-%02uT%02d:%02d:%02dZ",
                static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()), static_cast<int>(clock.hours().count()),
                static_cast<int>(clock.minutes().count()),
                static_cast<int>(clock.seconds().count()));
  return buffer;
}

Dataset parse_csv(std::istream& in, const CsvOptions& options) {
  Dataset dataset;
  dataset.source = options.source;

  std::string line;
  std::size_t line_number = 0;
  std::optional<Columns> columns;
  std::size_t data_rows = 0;
  while (std::getline(in, line)) {
    ++line_number;
    std::string_view view = line;
    if (line_number == 1 && view.starts_with("\xEF\xBB\xBF")) view.remove_prefix(3);
    if (trim(view).empty()) continue;
    const auto fields = split_fields(view);

    if (!columns) {
      std::vector<std::string> header;
      header.reserve(fields.size());
      for (std::string_view f : fields) header.push_back(upper(f));
      columns = locate_columns(header, options.source);
      continue;
    }

    ++data_rows;
    auto skip = [&](const char* reason) { dataset.skipped.push_back({line_number, reason}); };
    const std::size_t needed =
        std::max({columns->time, columns->lon, columns->lat, columns->prob}) + 1;
    if (fields.size() < needed) {
      skip("missing-field");
      continue;
    }

    const std::string_view time_text = fields[columns->time];
    std::optional<Timestamp> time = parse_timestamp(time_text);
    if (!time) {
      if (const auto clock = parse_clock(time_text)) {
        if (!options.date) {
          skip("missing-date");
          continue;
        }
        time = Timestamp{*options.date} + *clock;
      }
    }
    if (!time) {
      skip("bad-time");
      continue;
    }
    const auto lon = parse_double(fields[columns->lon]);
    const auto lat = parse_double(fields[columns->lat]);
    if (!lon || !lat) {
      skip("bad-coordinate");
      continue;
    }
    auto prob = parse_double(fields[columns->prob]);
    if (prob && *prob > 1.0) *prob /= 100.0;  // SWDI publishes integer percents
    if (!prob || !(*prob > 0.0) || *prob > 1.0) {
      skip("bad-prob");
      continue;
    }
    dataset.events.push_back({*time, *lon, *lat, *prob});
  }

  if (!columns) throw DataError(options.source + ": no header row");
  if (dataset.events.empty()) {
    throw DataError(options.source + ": no data rows parsed (" + std::to_string(data_rows) +
                    " rows, " + std::to_string(dataset.skipped.size()) + " skipped)");
  }
  return dataset;
}

Dataset parse_csv_text(std::string_view text, const CsvOptions& options) {
  std::istringstream in{std::string(text)};
  return parse_csv(in, options);
}

Dataset load_csv_file(const std::string& path, const CsvOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  CsvOptions with_source = options;
  with_source.source = path;
  return parse_csv(in, with_source);
}

std::string write_csv(const Dataset& dataset) {
  if (dataset.events.empty()) throw DataError("write_csv: dataset has no events");
  std::string out = "ZTIME,LON,LAT,PROB\n";
  for (const HailEvent& e : dataset.events) {
    out += format_timestamp(e.time);
    out += ',';
    append_shortest(out, e.lon);
    out += ',';
    append_shortest(out, e.lat);
    out += ',';
    append_shortest(out, e.prob);
    out += '\n';
  }
  return out;
}

}  // namespace hailchi
