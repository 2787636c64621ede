#pragma once

// Line-oriented text format for instances:
//
//   # comment
//   LINE <a> <b>
//   REQ <predicted> <actual> <time>
//
// Numbers are decimals or p/q rationals. Serialization writes canonical p/q.

#include <trp/core.hpp>
#include <trp/scalar.hpp>

#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace trp {

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

namespace detail {

inline std::vector<std::string> split_ws(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

}  // namespace detail

inline Instance parse_instance(std::string_view text, Model model = Model::Prediction) {
  std::optional<LineSegment> line;
  std::vector<Request> requests;
  std::istringstream in{std::string(text)};
  std::size_t lineno = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++lineno;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    auto tokens = detail::split_ws(raw);
    if (tokens.empty() || tokens.front().front() == '#') continue;
    try {
      if (tokens.front() == "LINE") {
        if (line) throw ParseError(lineno, "duplicate LINE");
        if (tokens.size() != 3) throw ParseError(lineno, "expected LINE <a> <b>");
        line.emplace(parse_scalar(tokens[1]), parse_scalar(tokens[2]));
      } else if (tokens.front() == "REQ") {
        if (!line) throw ParseError(lineno, "REQ before LINE");
        if (tokens.size() != 4) throw ParseError(lineno, "expected REQ <predicted> <actual> <time>");
        Request r{requests.size(), parse_scalar(tokens[1]), parse_scalar(tokens[2]), parse_scalar(tokens[3])};
        if (!line->contains(r.predicted_loc) || !line->contains(r.actual_loc)) {
          throw ParseError(lineno, "position outside segment");
        }
        if (sgn(r.arrival_time) < 0) throw ParseError(lineno, "negative time");
        requests.push_back(std::move(r));
      } else {
        throw ParseError(lineno, "unknown record '" + tokens.front() + "'");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(lineno, e.what());
    }
  }
  if (!line) throw ParseError(lineno, "missing LINE");
  if (requests.empty()) throw ParseError(lineno, "no requests");
  return Instance(*line, std::move(requests), model);
}

inline std::string serialize_instance(const Instance& inst) {
  std::string out = "LINE " + to_string(inst.line().left()) + " " + to_string(inst.line().right()) + "\n";
  for (const auto& r : inst.requests()) {
    out += "REQ " + to_string(r.predicted_loc) + " " + to_string(r.actual_loc) + " " + to_string(r.arrival_time) + "\n";
  }
  return out;
}

}  // namespace trp
