#include <chrono>
#include <cstdio>
#include <string>

#include "hailchi/error.h"
#include "hailchi/ingest.h"
#include "httplib.h"

namespace hailchi {
namespace {

std::string compact_date(std::chrono::sys_days day) {
  const std::chrono::year_month_day ymd{day};
  char buffer[16];
  std::snprintf(buffer, sizeof buffer, "%04d%02u%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buffer;
}

std::chrono::sys_days require_date(std::string_view text, const char* which) {
  const auto day = parse_date(text);
  if (!day) {
    throw DomainError(std::string("fetch_swdi: ") + which + " date '" + std::string(text) +
                      "' is not YYYY-MM-DD");
  }
  return *day;
}

struct SplitUrl {
  std::string origin;  // scheme://host[:port]
  std::string path;    // without trailing slash
};

SplitUrl split_url(std::string_view url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string_view::npos) {
    throw DomainError("fetch_swdi: endpoint '" + std::string(url) + "' has no scheme");
  }
  const auto path_start = url.find('/', scheme_end + 3);
  SplitUrl out;
  out.origin = std::string(url.substr(0, path_start));
  if (path_start != std::string_view::npos) out.path = std::string(url.substr(path_start));
  while (!out.path.empty() && out.path.back() == '/') out.path.pop_back();
  return out;
}

}  // namespace

std::string swdi_url(std::string_view start_date, std::string_view end_date,
                     std::string_view endpoint_base, const SwdiOptions& options) {
  const auto start = require_date(start_date, "start");
  const auto end = require_date(end_date, "end");
  if (start > end) throw DomainError("fetch_swdi: start date is after end date");
  std::string base(endpoint_base);
  while (!base.empty() && base.back() == '/') base.pop_back();
  return base + "/csv/" + options.product + "/" + compact_date(start) + ":" + compact_date(end);
}

std::string fetch_swdi(std::string_view start_date, std::string_view end_date,
                       std::string_view endpoint_base, const SwdiOptions& options) {
  const std::string url = swdi_url(start_date, end_date, endpoint_base, options);
  const SplitUrl parts = split_url(url);

  httplib::Client client(parts.origin);
  if (!client.is_valid()) {
    throw NetworkError("fetch_swdi: unsupported endpoint " + parts.origin);
  }
  client.set_connection_timeout(options.timeout);
  client.set_read_timeout(options.timeout);
  client.set_follow_location(true);

  const auto response = client.Get(parts.path);
  if (!response) {
    throw NetworkError("fetch_swdi: GET " + url + " failed: " + httplib::to_string(response.error()));
  }
  if (response->status < 200 || response->status >= 300) {
    throw HttpStatusError("fetch_swdi: GET " + url + " returned HTTP " +
                              std::to_string(response->status),
                          response->status);
  }
  if (response->body.empty()) throw EmptyBodyError("fetch_swdi: GET " + url + " returned no data");
  return response->body;
}

}  // namespace hailchi
