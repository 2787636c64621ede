#pragma once

// Line, requests and instances of the online repairperson problem.

#include <trp/quadratic.hpp>
#include <trp/scalar.hpp>

#include <cstddef>
#include <string>
#include <vector>

namespace trp {

/// Whether strategies may see predicted locations at time 0.
enum class Model { Original, Prediction };

inline std::string to_string(Model m) { return m == Model::Original ? "original" : "prediction"; }

/// The segment [a, b] with the origin at 0, a <= 0 <= b, b - a > 0.
class LineSegment {
 public:
  LineSegment(Scalar a, Scalar b) : a_(std::move(a)), b_(std::move(b)) {
    a_.canonicalize();
    b_.canonicalize();
    if (sgn(a_) > 0 || sgn(b_) < 0) throw Error("line must contain the origin");
    if (a_ == b_) throw Error("line must have positive length");
  }

  const Scalar& left() const { return a_; }
  const Scalar& right() const { return b_; }
  Scalar length() const { return b_ - a_; }
  bool is_half_line() const { return sgn(a_) == 0 || sgn(b_) == 0; }
  bool contains(const Scalar& x) const { return a_ <= x && x <= b_; }

  /// Signed far end of a half-line: b for [0, b], a for [a, 0].
  const Scalar& far_end() const {
    if (!is_half_line()) throw Error("not a half-line");
    return sgn(a_) == 0 ? b_ : a_;
  }

  friend bool operator==(const LineSegment&, const LineSegment&) = default;

 private:
  Scalar a_;
  Scalar b_;
};

struct Request {
  std::size_t id = 0;
  Scalar predicted_loc;
  Scalar actual_loc;
  Scalar arrival_time;

  Scalar error() const { return abs_diff(actual_loc, predicted_loc); }

  friend bool operator==(const Request&, const Request&) = default;
};

class Instance {
 public:
  Instance(LineSegment line, std::vector<Request> requests, Model model = Model::Prediction)
      : line_(std::move(line)), requests_(std::move(requests)), model_(model) {
    if (requests_.empty()) throw Error("instance needs at least one request");
    for (std::size_t i = 0; i < requests_.size(); ++i) {
      Request& r = requests_[i];
      r.predicted_loc.canonicalize();
      r.actual_loc.canonicalize();
      r.arrival_time.canonicalize();
      if (!line_.contains(r.predicted_loc) || !line_.contains(r.actual_loc)) {
        throw Error("request " + std::to_string(i) + ": position outside segment");
      }
      if (sgn(r.arrival_time) < 0) throw Error("request " + std::to_string(i) + ": negative time");
      requests_[i].id = i;
    }
  }

  const LineSegment& line() const { return line_; }
  const std::vector<Request>& requests() const { return requests_; }
  std::size_t size() const { return requests_.size(); }
  Model model() const { return model_; }

  Instance with_model(Model m) const { return Instance(line_, requests_, m); }

  /// Maximum prediction error over all requests.
  Scalar max_error() const {
    Scalar worst(0);
    for (const auto& r : requests_) worst = max_of(worst, r.error());
    return worst;
  }
  /// max_error relative to the line length, in [0, 1].
  Scalar relative_error() const { return max_error() / line_.length(); }

  Scalar max_arrival() const {
    Scalar worst(0);
    for (const auto& r : requests_) worst = max_of(worst, r.arrival_time);
    return worst;
  }

  std::vector<Scalar> actual_locations() const {
    std::vector<Scalar> out;
    out.reserve(requests_.size());
    for (const auto& r : requests_) out.push_back(r.actual_loc);
    return out;
  }
  std::vector<Scalar> predicted_locations() const {
    std::vector<Scalar> out;
    out.reserve(requests_.size());
    for (const auto& r : requests_) out.push_back(r.predicted_loc);
    return out;
  }

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  LineSegment line_;
  std::vector<Request> requests_;
  Model model_;
};

}  // namespace trp
