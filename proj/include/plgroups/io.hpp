#pragma once

// Self-describing JSON documents: {"format_version", "kind", "payload"} with
// every scalar written exactly, as "p/q" or {"a":"p/q","b":"r/s","d":n}.

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "plgroups/automorphism.hpp"
#include "plgroups/group.hpp"

namespace plg::io {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

inline Json to_json(const Scalar& s) {
  if (s.is_rational()) return s.as_rational().str();
  return Json{{"a", s.rational_part().str()}, {"b", s.irrational_part().str()}, {"d", s.radicand()}};
}

inline Scalar scalar_from_json(const Json& j) {
  if (j.is_string()) return Scalar::parse(j.get<std::string>());
  if (j.is_number_integer()) return Scalar(j.get<long long>());
  if (j.is_object()) {
    if (!j.contains("a") || !j.contains("b") || !j.contains("d")) {
      fail(ErrorKind::InvalidInput, "quadratic scalar needs fields a, b and d");
    }
    Rational a = detail::parse_rational(j.at("a").get<std::string>());
    Rational b = detail::parse_rational(j.at("b").get<std::string>());
    auto d = j.at("d").get<long long>();
    if (d < 0) fail(ErrorKind::InvalidInput, "negative radicand");
    if (b == 0) return Scalar(a);
    return Scalar::quadratic(std::move(a), std::move(b), static_cast<std::uint32_t>(d));
  }
  fail(ErrorKind::InvalidInput, "scalars are strings or {a,b,d} objects, got " + j.dump());
}

inline Json to_json(const Interval& i) {
  switch (i.kind()) {
    case Interval::Kind::Compact:
      return Json{{"kind", "compact"}, {"b", to_json(i.b())}};
    case Interval::Kind::HalfLine:
      return Json{{"kind", "half_line"}};
    case Interval::Kind::Line:
      return Json{{"kind", "line"}};
  }
  return {};
}

inline Interval interval_from_json(const Json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "compact") return Interval::compact(scalar_from_json(j.at("b")));
  if (kind == "half_line") return Interval::half_line();
  if (kind == "line") return Interval::line();
  fail(ErrorKind::InvalidInput, "unknown interval kind '" + kind + "'");
}

inline Json to_json(const AffineMap& m) {
  return Json{{"slope", to_json(m.slope)}, {"intercept", to_json(m.intercept)}};
}

inline AffineMap affine_from_json(const Json& j) {
  return {scalar_from_json(j.at("slope")), scalar_from_json(j.at("intercept"))};
}

inline Json map_payload(const PLMap& f, const Interval& interval) {
  Json points = Json::array();
  for (auto& p : f.points()) points.push_back(Json::array({to_json(p.x), to_json(p.y)}));
  return Json{{"interval", to_json(interval)},
              {"orientation", f.increasing() ? "+" : "-"},
              {"left_germ", to_json(f.left_germ())},
              {"points", std::move(points)},
              {"right_germ", to_json(f.right_germ())}};
}

struct MapData {
  PLMap map;
  Interval interval;
};

inline MapData map_from_payload(const Json& j) {
  std::vector<Point> points;
  for (auto& p : j.at("points")) {
    if (!p.is_array() || p.size() != 2) fail(ErrorKind::InvalidInput, "points are [x, y] pairs");
    points.push_back({scalar_from_json(p[0]), scalar_from_json(p[1])});
  }
  PLMap f = PLMap::from_raw(affine_from_json(j.at("left_germ")), std::move(points),
                            affine_from_json(j.at("right_germ")));
  if (j.contains("orientation")) {
    std::string o = j.at("orientation").get<std::string>();
    if ((o == "+") != f.increasing()) fail(ErrorKind::InvalidInput, "orientation field contradicts the data");
  }
  Interval interval = j.contains("interval") ? interval_from_json(j.at("interval")) : Interval::line();
  return {std::move(f), std::move(interval)};
}

inline Json group_payload(const FGGroup& g) {
  Json gens = Json::array();
  for (auto& x : g.generators()) gens.push_back(Json{{"name", x.name}, {"map", map_payload(x.map, g.interval())}});
  std::string slopes;
  if (g.slopes().kind() == SlopeGroup::Kind::CyclicQuadratic) {
    slopes = "cyclic:" + g.slopes().generators()[0].str();
  } else {
    for (std::size_t i = 0; i < g.slopes().generators().size(); ++i) {
      if (i) slopes += ",";
      slopes += g.slopes().generators()[i].str();
    }
  }
  return Json{{"interval", to_json(g.interval())},
              {"slope_group", slopes},
              {"module", g.module().str()},
              {"generators", std::move(gens)}};
}

inline FGGroup group_from_payload(const Json& j) {
  std::vector<NamedMap> gens;
  for (auto& x : j.at("generators")) {
    gens.push_back({x.at("name").get<std::string>(), map_from_payload(x.at("map")).map});
  }
  return FGGroup(interval_from_json(j.at("interval")),
                 SlopeGroup::parse(j.at("slope_group").get<std::string>()),
                 ModuleSpec::parse(j.at("module").get<std::string>()), std::move(gens));
}

struct Document {
  int format_version = kFormatVersion;
  std::string kind;  // map | group | automorphism | report
  Json payload;

  std::string emit() const {
    Json j{{"format_version", format_version}, {"kind", kind}, {"payload", payload}};
    return j.dump(2) + "\n";
  }

  static Document parse(const std::string& text) {
    Json j;
    try {
      j = Json::parse(text);
    } catch (const Json::parse_error& e) {
      fail(ErrorKind::InvalidInput, std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("format_version") || !j.contains("kind") || !j.contains("payload")) {
      fail(ErrorKind::InvalidInput, "document needs format_version, kind and payload");
    }
    Document d;
    d.format_version = j.at("format_version").get<int>();
    if (d.format_version != kFormatVersion) {
      fail(ErrorKind::Unsupported, "unsupported format_version " + std::to_string(d.format_version));
    }
    d.kind = j.at("kind").get<std::string>();
    if (d.kind != "map" && d.kind != "group" && d.kind != "automorphism" && d.kind != "report") {
      fail(ErrorKind::InvalidInput, "unknown document kind '" + d.kind + "'");
    }
    d.payload = j.at("payload");
    return d;
  }
};

inline Document map_document(const PLMap& f, const Interval& interval) {
  return {kFormatVersion, "map", map_payload(f, interval)};
}

inline Document group_document(const FGGroup& g) { return {kFormatVersion, "group", group_payload(g)}; }

/// An automorphism document stores its conjugator as a map payload.
inline Document automorphism_document(const std::string& name, const PLMap& conjugator,
                                      const Interval& interval) {
  return {kFormatVersion, "automorphism",
          Json{{"name", name}, {"conjugator", map_payload(conjugator, interval)}}};
}

}  // namespace plg::io
