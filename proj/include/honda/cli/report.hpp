#pragma once

// JSON reports. A report has a deterministic body and a "runtime" section
// (wall time, worker count, timestamp) that is the only part allowed to
// differ between reruns of the same configuration.

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "honda/errors.hpp"
#include "honda/matrix.hpp"
#include "json.hpp"

namespace honda::cli {

  using json = nlohmann::json;

  inline char const* tool_version() {
#ifdef HONDA_VERSION
    return HONDA_VERSION;
#else
    return "unknown";
#endif
  }

  //! Row-major integer rows.
  inline json to_json(SquareMatrix const& M) {
    json rows = json::array();
    for (std::size_t i = 0; i < M.dim(); ++i) {
      json row = json::array();
      for (std::size_t j = 0; j < M.dim(); ++j) {
        row.push_back(M.get(i, j));
      }
      rows.push_back(std::move(row));
    }
    return rows;
  }

  struct Report {
    json body    = json::object();
    json runtime = json::object();

    bool pass() const {
      return body.value("verdict", "fail") == "pass";
    }

    //! The full document: body plus runtime.
    json document() const {
      json d       = body;
      d["runtime"] = runtime;
      return d;
    }
  };

  //! A report skeleton: tool, command and config echo.
  inline Report make_report(std::string const& command, json config) {
    Report r;
    r.body["tool"]            = {{"name", "honda"}, {"version", tool_version()}};
    r.body["command"]         = command;
    r.body["config"]          = std::move(config);
    r.body["verdict"]         = "pass";
    r.body["counterexamples"] = json::array();
    r.body["statistics"]      = json::object();
    return r;
  }

  inline std::string utc_timestamp() {
    auto        now = std::chrono::system_clock::now();
    std::time_t t   = std::chrono::system_clock::to_time_t(now);
    std::tm     tm{};
    gmtime_r(&t, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
  }

  namespace detail {
    inline void flatten(json const& j, std::string const& prefix,
                        std::vector<std::pair<std::string, std::string>>& out) {
      if (j.is_object()) {
        for (auto const& [k, v] : j.items()) {
          flatten(v, prefix.empty() ? k : prefix + "." + k, out);
        }
      } else if (j.is_string()) {
        out.emplace_back(prefix, j.get<std::string>());
      } else if (j.is_array()) {
        out.emplace_back(prefix, j.dump());
      } else {
        out.emplace_back(prefix, j.dump());
      }
    }

    inline std::string csv_field(std::string const& s) {
      if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
      }
      std::string q = "\"";
      for (char c : s) {
        q += c;
        if (c == '"') {
          q += '"';
        }
      }
      return q + "\"";
    }
  }  // namespace detail

  //! The summary table: verdict, config and statistics as key,value rows.
  inline std::string to_csv(Report const& r) {
    std::vector<std::pair<std::string, std::string>> rows;
    rows.emplace_back("command", r.body.at("command").get<std::string>());
    rows.emplace_back("verdict", r.body.at("verdict").get<std::string>());
    detail::flatten(r.body.at("config"), "config", rows);
    detail::flatten(r.body.at("statistics"), "statistics", rows);
    rows.emplace_back("counterexamples", std::to_string(r.body.at("counterexamples").size()));
    std::string out = "key,value\n";
    for (auto const& [k, v] : rows) {
      out += detail::csv_field(k) + "," + detail::csv_field(v) + "\n";
    }
    return out;
  }

  //! Writes `text` to `path`, or to stdout when the path is empty or "-".
  inline void emit(std::string const& text, std::string const& path, std::ostream& stdout_) {
    if (path.empty() || path == "-") {
      stdout_ << text;
      stdout_.flush();
      return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
      throw UsageError("cannot write " + path);
    }
    f << text;
  }

}  // namespace honda::cli
