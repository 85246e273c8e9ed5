#pragma once

// Text formats: instance JSON, scalar arrays, the event CSV and the segment
// table. Rationals are written as "p/q" strings, doubles as shortest
// round-trip JSON numbers.

#include <iosfwd>
#include <string>
#include <vector>

#include "w1fl/core.hpp"
#include "w1fl/types.hpp"

namespace w1fl {

/// An instance file with its scalars still in text form. JSON numbers keep
/// their shortest decimal spelling, which the rational backend reads exactly.
struct RawInstance {
  std::vector<std::string> y;
  std::vector<std::string> alpha;
  bool has_rational_strings = false;  // any scalar spelled as a JSON string
};

RawInstance parse_instance_json(const std::string& text);
RawInstance read_instance_file(const std::string& path);

template <Scalar T>
Instance<T> to_instance(const RawInstance& raw) {
  Instance<T> inst;
  for (const auto& s : raw.y) inst.y.push_back(ScalarTraits<T>::parse(s));
  for (const auto& s : raw.alpha) inst.alpha.push_back(ScalarTraits<T>::parse(s));
  inst.validate();
  return inst;
}

/// JSON token for one scalar.
template <Scalar T>
std::string json_scalar(const T& v) {
  if constexpr (ScalarTraits<T>::exact) {
    return "\"" + to_string(v) + "\"";
  } else {
    return to_string(v);
  }
}

template <Scalar T>
std::string json_array(const std::vector<T>& values) {
  std::string out = "[";
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k) out += ", ";
    out += json_scalar(values[k]);
  }
  return out + "]";
}

template <Scalar T>
std::string instance_json(const Instance<T>& inst) {
  return "{\"y\": " + json_array(inst.y) + ", \"alpha\": " + json_array(inst.alpha) + "}\n";
}

/// Parses a JSON array of numbers or numeric strings.
std::vector<std::string> parse_scalar_array_json(const std::string& text);

template <Scalar T>
std::string events_csv(const SolutionPath<T>& path) {
  std::string out = "gamma,index,kind,sign\n";
  for (const auto& e : path.events) {
    out += to_string(e.gamma) + "," + std::to_string(e.index) + "," + event_kind_name(e.kind) + "," +
           (e.sign < 0 ? "-1" : "1") + "\n";
  }
  return out;
}

struct CsvEvent {
  std::string gamma;
  std::size_t index = 0;
  EventKind kind = EventKind::BecameFree;
  int sign = 1;
};

std::vector<CsvEvent> parse_events_csv(const std::string& text);

/// Full path as JSON: the event log, the interval-0 signs, the interval
/// boundaries and each coordinate's change list. `parse_path_json` reads it back.
template <Scalar T>
std::string path_json(const SolutionPath<T>& path) {
  std::string out = "{\"events\": [";
  for (std::size_t k = 0; k < path.events.size(); ++k) {
    const auto& e = path.events[k];
    out += k ? ",\n  " : "\n  ";
    out += "{\"gamma\": " + json_scalar(e.gamma) + ", \"index\": " + std::to_string(e.index) + ", \"kind\": \"" +
           event_kind_name(e.kind) + "\", \"sign\": " + (e.sign < 0 ? "-1" : "1") + "}";
  }
  out += "],\n \"initial_signs\": [";
  for (std::size_t p = 0; p < path.initial_signs.size(); ++p) {
    if (p) out += ", ";
    out += std::to_string(path.initial_signs[p]);
  }
  out += "],\n \"intervals\": [";
  for (std::size_t k = 0; k < path.interval_count(); ++k) {
    if (k) out += ", ";
    out += "[" + json_scalar(path.interval_start(k)) + ", ";
    out += k < path.events.size() ? json_scalar(path.events[k].gamma) : std::string("null");
    out += "]";
  }
  out += "],\n \"pieces\": [";
  for (std::size_t p = 0; p < path.pieces.size(); ++p) {
    out += p ? ",\n  [" : "\n  [";
    for (std::size_t j = 0; j < path.pieces[p].size(); ++j) {
      const auto& pc = path.pieces[p][j];
      if (j) out += ", ";
      out += "{\"interval\": " + std::to_string(pc.first_interval) + ", \"intercept\": " + json_scalar(pc.intercept) +
             ", \"slope\": " + json_scalar(pc.slope) + "}";
    }
    out += "]";
  }
  return out + "]}\n";
}

struct RawPiece {
  std::size_t first_interval = 0;
  std::string intercept;
  std::string slope;
};

struct RawPath {
  std::vector<CsvEvent> events;
  std::vector<int> initial_signs;
  std::vector<std::vector<RawPiece>> pieces;
};

RawPath parse_path_json(const std::string& text);

/// Rebuilds a path for `dual` from its JSON form. Structural mismatches
/// (wrong coordinate count, pieces out of order) are InvalidInput.
template <Scalar T>
SolutionPath<T> to_path(const RawPath& raw, const DualInstance<T>& dual) {
  SolutionPath<T> path;
  path.dual = dual;
  path.initial_signs = raw.initial_signs;
  for (const auto& e : raw.events) {
    path.events.push_back({ScalarTraits<T>::parse(e.gamma), e.index, e.kind, e.sign});
  }
  if (raw.pieces.size() != dual.ytilde.size()) throw InvalidInput("path has the wrong number of coordinates");
  for (const auto& list : raw.pieces) {
    std::vector<Piece<T>> out;
    for (const auto& pc : list) {
      if (out.empty() ? pc.first_interval != 0 : pc.first_interval <= out.back().first_interval ||
                                                     pc.first_interval > path.events.size()) {
        throw InvalidInput("path pieces are out of order");
      }
      out.push_back({pc.first_interval, ScalarTraits<T>::parse(pc.intercept), ScalarTraits<T>::parse(pc.slope)});
    }
    if (out.empty()) throw InvalidInput("path coordinate without pieces");
    path.pieces.push_back(std::move(out));
  }
  return path;
}

}  // namespace w1fl
