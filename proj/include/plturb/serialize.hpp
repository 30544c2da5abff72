#pragma once

// JSON text formats for maps and certificates. All rationals are strings
// "p/q" (or "p"); no floating point appears in any file. Map file:
//
//   { "domain": ["0", "1"], "breakpoints": [["0","0"], ["1/2","1"], ["1","0"]] }
//
// Certificate file: a "kind" tag ("trap", "double_turbulence",
// "turbulence_pair", "trap_interval"), the kind's fields, and an optional
// "trace" object with every intermediate point of the construction.

#include "plturb/certificate.hpp"
#include "plturb/plmap.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace plturb {

using json = nlohmann::json;

inline constexpr const char* kCertificateFormat = "plturb-certificate/1";

/// Malformed input (syntax, schema or invariant violation).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace io {

inline json rat(const Rational& q) { return to_string(q); }

inline Rational rat(const json& j, const std::string& where) {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const RationalSyntaxError& e) {
      throw InputError(where + ": " + e.what());
    }
  }
  if (j.is_number_integer()) return Rational(std::to_string(j.get<std::int64_t>()));
  throw InputError(where + ": expected a rational string \"p/q\"");
}

inline json interval(const RatInterval& iv) { return json::array({rat(iv.lo), rat(iv.hi)}); }

inline RatInterval interval(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) throw InputError(where + ": expected [lo, hi]");
  Rational lo = rat(j[0], where + "[0]");
  Rational hi = rat(j[1], where + "[1]");
  if (hi < lo) throw InputError(where + ": lo > hi");
  return {lo, hi};
}

inline const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) throw InputError(where + ": missing field \"" + key + "\"");
  return obj.at(key);
}

// 1-based line and column for a byte offset into text.
inline std::string position(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

inline json parse_text(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t at = e.byte > 0 ? e.byte - 1 : 0;
    const std::string what = e.what();
    const std::size_t k = what.find(": ");
    throw InputError(source + ": syntax error at " + position(text, at) + ": " +
                     (k == std::string::npos ? what : what.substr(k + 2)));
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace io

// ---------------------------------------------------------------------------
// Maps

inline json map_to_json(const PLMap& f) {
  json bps = json::array();
  for (const auto& p : f.points()) bps.push_back(json::array({io::rat(p.x), io::rat(p.y)}));
  return json{{"domain", json::array({io::rat(f.lo()), io::rat(f.hi())})}, {"breakpoints", bps}};
}

inline PLMap map_from_json(const json& j, const std::string& source = "map") {
  const RatInterval dom = io::interval(io::field(j, "domain", source), source + ".domain");
  const json& bps = io::field(j, "breakpoints", source);
  if (!bps.is_array()) throw InputError(source + ".breakpoints: expected an array");
  std::vector<Breakpoint> pts;
  for (std::size_t i = 0; i < bps.size(); ++i) {
    const std::string where = source + ".breakpoints[" + std::to_string(i) + "]";
    if (!bps[i].is_array() || bps[i].size() != 2) throw InputError(where + ": expected [x, y]");
    pts.push_back({io::rat(bps[i][0], where + "[0]"), io::rat(bps[i][1], where + "[1]")});
  }
  if (pts.size() < 2) throw InputError(source + ".breakpoints: need at least two breakpoints");
  if (pts.front().x != dom.lo || pts.back().x != dom.hi) {
    throw InputError(source + ": first and last breakpoint must sit at the domain endpoints");
  }
  try {
    return PLMap(std::move(pts));
  } catch (const std::invalid_argument& e) {
    throw InputError(source + ": " + e.what());
  }
}

inline PLMap parse_map(const std::string& text, const std::string& source = "map") {
  return map_from_json(io::parse_text(text, source), source);
}

inline PLMap load_map(const std::string& path) { return parse_map(io::read_file(path), path); }

/// Canonical, byte-stable serialization (sorted keys, two-space indent).
inline std::string canonical(const json& j) { return j.dump(2) + "\n"; }

/// 64-bit FNV-1a of the canonical map serialization, as 16 hex digits.
inline std::string fingerprint(const PLMap& f) {
  const std::string s = map_to_json(f).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a64:") + buf;
}

// ---------------------------------------------------------------------------
// Certificates

inline json pair_to_json(const TurbulencePair& p) {
  return json{{"map_power", p.map_power}, {"J", io::interval(p.J)}, {"J0", io::interval(p.J0)}, {"J1", io::interval(p.J1)}};
}

inline TurbulencePair pair_from_json(const json& j, const std::string& where) {
  const json& mp = io::field(j, "map_power", where);
  if (!mp.is_number_integer()) throw InputError(where + ".map_power: expected an integer");
  return {mp.get<int>(), io::interval(io::field(j, "J", where), where + ".J"),
          io::interval(io::field(j, "J0", where), where + ".J0"), io::interval(io::field(j, "J1", where), where + ".J1")};
}

inline json certificate_to_json(const Certificate& cert) {
  json j;
  j["kind"] = kind_tag(cert);
  std::visit(
      [&](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, TrapCertificate>) {
          j["z"] = io::rat(c.z);
          j["K"] = io::interval(c.K);
          j["c"] = io::rat(c.c);
        } else if constexpr (std::is_same_v<T, DoubleTurbulenceCertificate>) {
          j["left"] = pair_to_json(c.left);
          j["right"] = pair_to_json(c.right);
        } else if constexpr (std::is_same_v<T, TurbulencePair>) {
          j.update(pair_to_json(c));
        } else {
          j["J"] = io::interval(c.J);
          j["z"] = io::rat(c.z);
          j["c"] = io::rat(c.c);
        }
      },
      cert);
  return j;
}

inline Certificate certificate_from_json(const json& j, const std::string& where = "certificate") {
  const json& kind = io::field(j, "kind", where);
  if (!kind.is_string()) throw InputError(where + ".kind: expected a string");
  const std::string k = kind.get<std::string>();
  if (k == "trap") {
    return TrapCertificate{io::rat(io::field(j, "z", where), where + ".z"),
                           io::interval(io::field(j, "K", where), where + ".K"),
                           io::rat(io::field(j, "c", where), where + ".c")};
  }
  if (k == "double_turbulence") {
    return DoubleTurbulenceCertificate{pair_from_json(io::field(j, "left", where), where + ".left"),
                                       pair_from_json(io::field(j, "right", where), where + ".right")};
  }
  if (k == "turbulence_pair") return pair_from_json(j, where);
  if (k == "trap_interval") {
    return TrapInterval{io::interval(io::field(j, "J", where), where + ".J"),
                        io::rat(io::field(j, "z", where), where + ".z"),
                        io::rat(io::field(j, "c", where), where + ".c")};
  }
  throw InputError(where + ".kind: unknown certificate kind \"" + k + "\"");
}

inline json trace_to_json(const WitnessTrace& t) {
  json j;
  j["side"] = to_string(t.side);
  json X = json::array();
  for (const auto& x : t.X) X.push_back(io::rat(x));
  j["X"] = X;
  j["a"] = io::rat(t.a);
  j["b"] = io::rat(t.b);
  j["z"] = io::rat(t.z);
  j["v"] = io::rat(t.v);
  j["z0"] = io::rat(t.z0);
  j["case"] = t.case_id;
  auto opt = [&](const char* key, const std::optional<Rational>& v) {
    if (v) j[key] = io::rat(*v);
  };
  opt("d", t.d);
  opt("s", t.s);
  opt("t", t.t);
  opt("t_tilde", t.t_tilde);
  opt("u1", t.u1);
  opt("e", t.e);
  opt("u", t.u);
  opt("w", t.w);
  opt("r", t.r);
  if (!t.tower.empty()) {
    json tw = json::array();
    for (const auto& e : t.tower) {
      tw.push_back({{"n", e.n}, {"u", io::rat(e.u)}, {"p", io::rat(e.p)}, {"period", e.period}});
    }
    j["tower"] = tw;
  }
  return j;
}

inline WitnessTrace trace_from_json(const json& j, const std::string& where = "trace") {
  WitnessTrace t;
  const json& side = io::field(j, "side", where);
  if (side == "up") t.side = Side::up;
  else if (side == "down") t.side = Side::down;
  else throw InputError(where + ".side: expected \"up\" or \"down\"");
  const json& X = io::field(j, "X", where);
  if (!X.is_array()) throw InputError(where + ".X: expected an array");
  for (std::size_t i = 0; i < X.size(); ++i) t.X.push_back(io::rat(X[i], where + ".X[" + std::to_string(i) + "]"));
  t.a = io::rat(io::field(j, "a", where), where + ".a");
  t.b = io::rat(io::field(j, "b", where), where + ".b");
  t.z = io::rat(io::field(j, "z", where), where + ".z");
  t.v = io::rat(io::field(j, "v", where), where + ".v");
  t.z0 = io::rat(io::field(j, "z0", where), where + ".z0");
  const json& cs = io::field(j, "case", where);
  if (!cs.is_number_integer()) throw InputError(where + ".case: expected an integer");
  t.case_id = cs.get<int>();
  auto opt = [&](const char* key, std::optional<Rational>& v) {
    if (j.contains(key)) v = io::rat(j.at(key), where + "." + key);
  };
  opt("d", t.d);
  opt("s", t.s);
  opt("t", t.t);
  opt("t_tilde", t.t_tilde);
  opt("u1", t.u1);
  opt("e", t.e);
  opt("u", t.u);
  opt("w", t.w);
  opt("r", t.r);
  if (j.contains("tower")) {
    const json& tw = j.at("tower");
    if (!tw.is_array()) throw InputError(where + ".tower: expected an array");
    for (std::size_t i = 0; i < tw.size(); ++i) {
      const std::string w = where + ".tower[" + std::to_string(i) + "]";
      const json& n = io::field(tw[i], "n", w);
      const json& per = io::field(tw[i], "period", w);
      if (!n.is_number_unsigned() || !per.is_number_unsigned()) throw InputError(w + ": n and period must be nonnegative integers");
      t.tower.push_back({n.get<std::size_t>(), io::rat(io::field(tw[i], "u", w), w + ".u"),
                         io::rat(io::field(tw[i], "p", w), w + ".p"), per.get<std::size_t>()});
    }
  }
  return t;
}

struct CertificateFile {
  Certificate certificate;
  std::optional<WitnessTrace> trace;
  std::string map_fingerprint;
};

inline json certificate_file_to_json(const CertificateFile& file) {
  json j = certificate_to_json(file.certificate);
  j["format"] = kCertificateFormat;
  if (!file.map_fingerprint.empty()) j["map_fingerprint"] = file.map_fingerprint;
  if (file.trace) j["trace"] = trace_to_json(*file.trace);
  return j;
}

inline CertificateFile certificate_file_from_json(const json& j, const std::string& where = "certificate") {
  if (!j.is_object()) throw InputError(where + ": expected an object");
  if (j.contains("format") && j.at("format") != kCertificateFormat) {
    throw InputError(where + ".format: unsupported format");
  }
  CertificateFile file{certificate_from_json(j, where), std::nullopt, {}};
  if (j.contains("map_fingerprint") && j.at("map_fingerprint").is_string()) {
    file.map_fingerprint = j.at("map_fingerprint").get<std::string>();
  }
  if (j.contains("trace")) file.trace = trace_from_json(j.at("trace"), where + ".trace");
  return file;
}

inline CertificateFile parse_certificate(const std::string& text, const std::string& source = "certificate") {
  return certificate_file_from_json(io::parse_text(text, source), source);
}

}  // namespace plturb
