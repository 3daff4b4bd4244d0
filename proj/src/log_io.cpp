#include "atmine/log_io.hpp"

#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

namespace atmine {

namespace pt = boost::property_tree;

namespace {

std::optional<std::string> keyed_value(const pt::ptree& element, const char* tag, const char* key) {
  for (const auto& [name, child] : element) {
    if (name != tag) continue;
    const auto k = child.get_optional<std::string>("<xmlattr>.key");
    if (k && *k == key) return child.get_optional<std::string>("<xmlattr>.value").value_or("");
  }
  return std::nullopt;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

// Splits CSV text into records of fields.
std::vector<std::vector<std::string>> csv_records(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool field_started = false;
  std::size_t line = 1, col = 1, quote_line = 0, quote_col = 0;
  auto end_field = [&] {
    row.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_row = [&] {
    end_field();
    if (!(row.size() == 1 && row.front().empty())) rows.push_back(std::move(row));
    row.clear();
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
          ++col;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"' && !field_started) {
      quoted = true;
      field_started = true;
      quote_line = line;
      quote_col = col;
    } else if (c == ',') {
      end_field();
    } else if (c == '\n') {
      end_row();
    } else if (c == '\r') {
      // CRLF line endings
    } else {
      field.push_back(c);
      field_started = true;
    }
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  if (quoted) throw ParseError("unterminated quoted field", quote_line, quote_col);
  if (!field.empty() || field_started || !row.empty()) end_row();
  return rows;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos && !s.empty()) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  return out + "\"";
}

}  // namespace

EventLog parse_xes(std::string_view xml) {
  pt::ptree doc;
  try {
    std::istringstream in{std::string(xml)};
    pt::read_xml(in, doc);
  } catch (const pt::xml_parser_error& e) {
    throw ParseError("malformed XML: " + e.message(), e.line(), 1);
  }
  const auto root = doc.get_child_optional("log");
  if (!root) throw InputError("XES document has no <log> root element");
  EventLog log;
  std::set<std::string> ids;
  std::size_t trace_index = 0;
  for (const auto& [name, trace] : *root) {
    if (name != "trace") continue;
    auto id = keyed_value(trace, "string", "concept:name");
    if (!id)
      throw InputError("trace #" + std::to_string(trace_index) + " has no concept:name");
    if (!ids.insert(*id).second) throw InputError("duplicate case id '" + *id + "'");
    Case c{*id, {}};
    std::size_t event_index = 0;
    for (const auto& [ename, event] : trace) {
      if (ename != "event") continue;
      auto activity = keyed_value(event, "string", "concept:name");
      if (!activity)
        throw InputError("event #" + std::to_string(event_index) + " of trace #" +
                         std::to_string(trace_index) + " has no concept:name");
      c.events.push_back({*activity, keyed_value(event, "date", "time:timestamp"),
                          keyed_value(event, "string", "org:resource")});
      ++event_index;
    }
    log.cases.push_back(std::move(c));
    ++trace_index;
  }
  return log;
}

std::string write_xes(const EventLog& log) {
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  const std::string open = "<log xes.version=\"1.0\" xmlns=\"http://www.xes-standard.org/\"";
  if (log.cases.empty()) return out + open + "/>\n";
  out += open + ">\n";
  for (const auto& c : log.cases) {
    out += "  <trace>\n";
    out += "    <string key=\"concept:name\" value=\"" + xml_escape(c.id) + "\"/>\n";
    for (const auto& e : c.events) {
      out += "    <event>\n";
      out += "      <string key=\"concept:name\" value=\"" + xml_escape(e.activity) + "\"/>\n";
      if (e.timestamp)
        out += "      <date key=\"time:timestamp\" value=\"" + xml_escape(*e.timestamp) + "\"/>\n";
      if (e.resource)
        out += "      <string key=\"org:resource\" value=\"" + xml_escape(*e.resource) + "\"/>\n";
      out += "    </event>\n";
    }
    out += "  </trace>\n";
  }
  return out + "</log>\n";
}

EventLog parse_csv(std::string_view text, std::string_view case_column,
                   std::string_view activity_column,
                   std::optional<std::string_view> timestamp_column) {
  const auto rows = csv_records(text);
  if (rows.empty()) throw InputError("CSV input has no header row");
  const auto& header = rows.front();
  auto column = [&](std::string_view name) -> std::size_t {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return i;
    throw InputError("CSV header has no column '" + std::string(name) + "'");
  };
  const auto case_col = column(case_column);
  const auto act_col = column(activity_column);
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  const std::size_t ts_col = timestamp_column ? column(*timestamp_column) : kNone;

  EventLog log;
  std::map<std::string, std::size_t> position;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    auto cell = [&](std::size_t i) { return i < row.size() ? row[i] : std::string(); };
    const std::string activity = cell(act_col);
    if (activity.empty())
      throw InputError("CSV row " + std::to_string(r + 1) + " has an empty activity");
    const std::string id = cell(case_col);
    auto [it, fresh] = position.emplace(id, log.cases.size());
    if (fresh) log.cases.push_back({id, {}});
    Event e{activity, std::nullopt, std::nullopt};
    if (ts_col != kNone && !cell(ts_col).empty()) e.timestamp = cell(ts_col);
    log.cases[it->second].events.push_back(std::move(e));
  }
  return log;
}

std::string write_csv(const EventLog& log) {
  bool timestamps = false;
  for (const auto& c : log.cases)
    for (const auto& e : c.events) timestamps = timestamps || e.timestamp.has_value();
  std::string out = timestamps ? "case,activity,timestamp\n" : "case,activity\n";
  for (const auto& c : log.cases) {
    for (const auto& e : c.events) {
      out += csv_field(c.id) + "," + csv_field(e.activity);
      if (timestamps) out += "," + (e.timestamp ? csv_field(*e.timestamp) : std::string());
      out += "\n";
    }
  }
  return out;
}

LogVariants to_variants(const EventLog& log) {
  LogVariants out;
  for (const auto& c : log.cases) {
    Trace t;
    t.reserve(c.events.size());
    for (const auto& e : c.events) t.push_back(e.activity);
    out.add(t);
  }
  return out;
}

EventLog from_variants(const LogVariants& log) {
  EventLog out;
  std::size_t next = 1;
  auto emit = [&](const Trace& t) {
    Case c{std::to_string(next++), {}};
    for (const auto& a : t) c.events.push_back({a, std::nullopt, std::nullopt});
    out.cases.push_back(std::move(c));
  };
  for (std::uint64_t i = 0; i < log.empty_trace_count; ++i) emit(Trace{});
  for (const auto& [t, count] : log.variants)
    for (std::uint64_t i = 0; i < count; ++i) emit(t);
  return out;
}

}  // namespace atmine
