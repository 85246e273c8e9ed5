#include "w1fl/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace w1fl {

namespace {

std::string scalar_token(const nlohmann::json& v, bool& rational_string) {
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    rational_string = true;
    return s;
  }
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
  if (v.is_number_float()) return ScalarTraits<double>::to_string(v.get<double>());
  throw InvalidInput("expected a number or numeric string, got " + v.dump());
}

std::vector<std::string> token_array(const nlohmann::json& arr, const char* what, bool& rational_string) {
  if (!arr.is_array()) throw InvalidInput(std::string("'") + what + "' must be an array");
  std::vector<std::string> out;
  for (const auto& v : arr) out.push_back(scalar_token(v, rational_string));
  return out;
}

}  // namespace

RawInstance parse_instance_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(std::string("instance is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("y")) throw InvalidInput("instance must be an object with a 'y' array");
  RawInstance raw;
  raw.y = token_array(j["y"], "y", raw.has_rational_strings);
  if (j.contains("alpha")) {
    raw.alpha = token_array(j["alpha"], "alpha", raw.has_rational_strings);
  } else if (raw.y.size() > 1) {
    throw InvalidInput("instance is missing 'alpha'");
  }
  // Validate numerals early so malformed files fail before any solve.
  for (const auto& s : raw.y) (void)ScalarTraits<Rational>::parse(s);
  for (const auto& s : raw.alpha) (void)ScalarTraits<Rational>::parse(s);
  return raw;
}

RawInstance read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open instance file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_instance_json(ss.str());
}

std::vector<std::string> parse_scalar_array_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(std::string("not valid JSON: ") + e.what());
  }
  bool unused = false;
  return token_array(j, "array", unused);
}

std::vector<CsvEvent> parse_events_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<CsvEvent> out;
  if (!std::getline(in, line) || line != "gamma,index,kind,sign") throw InvalidInput("bad event CSV header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string gamma, index, kind, sign;
    if (!std::getline(row, gamma, ',') || !std::getline(row, index, ',') || !std::getline(row, kind, ',') ||
        !std::getline(row, sign)) {
      throw InvalidInput("bad event CSV row: " + line);
    }
    CsvEvent e;
    e.gamma = gamma;
    try {
      e.index = static_cast<std::size_t>(std::stoul(index));
      e.sign = std::stoi(sign);
    } catch (const std::exception&) {
      throw InvalidInput("bad event CSV row: " + line);
    }
    if (kind == "fuse") {
      e.kind = EventKind::BecameFree;
    } else if (kind == "unfuse") {
      e.kind = EventKind::BecameNonFree;
    } else {
      throw InvalidInput("bad event kind: " + kind);
    }
    out.push_back(std::move(e));
  }
  return out;
}

RawPath parse_path_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(std::string("path is not valid JSON: ") + e.what());
  }
  RawPath raw;
  try {
    bool unused = false;
    for (const auto& e : j.at("events")) {
      CsvEvent ev;
      ev.gamma = scalar_token(e.at("gamma"), unused);
      ev.index = e.at("index").get<std::size_t>();
      const auto kind = e.at("kind").get<std::string>();
      if (kind != "fuse" && kind != "unfuse") throw InvalidInput("bad event kind: " + kind);
      ev.kind = kind == "fuse" ? EventKind::BecameFree : EventKind::BecameNonFree;
      ev.sign = e.at("sign").get<int>();
      raw.events.push_back(std::move(ev));
    }
    raw.initial_signs = j.at("initial_signs").get<std::vector<int>>();
    for (const auto& list : j.at("pieces")) {
      std::vector<RawPiece> out;
      for (const auto& pc : list) {
        out.push_back({pc.at("interval").get<std::size_t>(), scalar_token(pc.at("intercept"), unused),
                       scalar_token(pc.at("slope"), unused)});
      }
      raw.pieces.push_back(std::move(out));
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed path JSON: ") + e.what());
  }
  return raw;
}

}  // namespace w1fl
