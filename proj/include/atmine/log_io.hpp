#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "atmine/errors.hpp"
#include "atmine/log_variants.hpp"

namespace atmine {

struct Event {
  std::string activity;
  std::optional<std::string> timestamp;
  std::optional<std::string> resource;

  friend bool operator==(const Event&, const Event&) = default;
};

struct Case {
  std::string id;
  std::vector<Event> events;

  friend bool operator==(const Case&, const Case&) = default;
};

struct EventLog {
  std::vector<Case> cases;

  friend bool operator==(const EventLog&, const EventLog&) = default;
};

/// Reads the XES subset: <log> with <trace> children, each identified by a
/// `concept:name` string attribute and holding <event> elements with a
/// `concept:name` activity, and optionally `time:timestamp` (date) and
/// `org:resource` (string). Other elements and attributes are ignored.
/// Throws ParseError for malformed XML and InputError for missing names or
/// duplicate case ids.
EventLog parse_xes(std::string_view xml);

/// Canonical XES document; parse_xes(write_xes(log)) == log.
std::string write_xes(const EventLog& log);

/// Comma-separated values with a header row. Rows are grouped by case id;
/// cases appear in order of first occurrence. Fields may be double-quoted
/// with "" as the escaped quote. An optional timestamp column is copied
/// verbatim. Throws InputError for a missing header or column or an empty
/// activity cell, and ParseError for an unterminated quoted field.
EventLog parse_csv(std::string_view text, std::string_view case_column,
                   std::string_view activity_column,
                   std::optional<std::string_view> timestamp_column = std::nullopt);

/// Header `case,activity` (plus `timestamp` when any event has one).
std::string write_csv(const EventLog& log);

LogVariants to_variants(const EventLog& log);

/// Expands variants into cases with ids "1", "2", ... in variant order.
EventLog from_variants(const LogVariants& log);

}  // namespace atmine
