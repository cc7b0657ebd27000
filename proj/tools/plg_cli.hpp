#pragma once

// The plg command-line surface. run() never exits the process, so tests can
// call it directly and compare the emitted bytes.

#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "plgroups/io.hpp"
#include "plgroups/plgroups.hpp"
#include "plgroups/suites.hpp"

namespace plg::cli {

using io::Json;

enum Exit : int { kOk = 0, kFails = 1, kInputError = 2, kUndecided = 3 };

struct Outcome {
  int code = kOk;
  std::string text;
};

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::InvalidInput, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline io::Document load(const std::string& path, const std::string& kind) {
  auto doc = io::Document::parse(read_file(path));
  if (doc.kind != kind) fail(ErrorKind::InvalidInput, path + " holds a " + doc.kind + ", expected a " + kind);
  return doc;
}

inline io::MapData load_map(const std::string& path) { return io::map_from_payload(load(path, "map").payload); }

inline FGGroup load_group(const std::string& path) {
  return io::group_from_payload(load(path, "group").payload);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(plg::detail::trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!plg::detail::trim(cur).empty()) out.push_back(plg::detail::trim(cur));
  return out;
}

inline std::vector<Scalar> scalars(const std::string& s) {
  std::vector<Scalar> out;
  for (auto& x : split(s, ',')) out.push_back(Scalar::parse(x));
  return out;
}

inline std::vector<Rational> rationals(const std::string& s) {
  std::vector<Rational> out;
  for (auto& x : split(s, ',')) out.push_back(plg::detail::parse_rational(x));
  return out;
}

/// identity | reflection | homothety:p | path to an automorphism document.
inline Automorphism automorphism(const FGGroup& group, const std::string& spec) {
  if (spec == "identity") return Automorphism::identity(group);
  if (spec == "reflection") return Automorphism::reflection(group);
  if (spec.rfind("homothety:", 0) == 0) return Automorphism::homothety(group, Scalar::parse(spec.substr(10)));
  auto doc = load(spec, "automorphism");
  auto phi = io::map_from_payload(doc.payload.at("conjugator"));
  return Automorphism::from_conjugator(group, phi.map, doc.payload.at("name").get<std::string>());
}

inline Outcome report(Json payload, int code = kOk) {
  return {code, io::Document{io::kFormatVersion, "report", std::move(payload)}.emit()};
}

inline Outcome map_out(const PLMap& f, const Interval& interval) {
  return {kOk, io::map_document(f, interval).emit()};
}

inline Outcome group_out(const FGGroup& g) { return {kOk, io::group_document(g).emit()}; }

inline Json germ_json(const GermData& d) {
  Json j{{"lambda", io::to_json(d.lambda)},
         {"rho", io::to_json(d.rho)},
         {"sigma_l", io::to_json(d.sigma_left())},
         {"sigma_r", io::to_json(d.sigma_right())}};
  auto tl = d.lambda.translation_amplitude();
  auto tr = d.rho.translation_amplitude();
  j["tau_l"] = tl ? io::to_json(*tl) : Json(nullptr);
  j["tau_r"] = tr ? io::to_json(*tr) : Json(nullptr);
  return j;
}

inline Json endpoint_json(const Endpoint& e, bool low) {
  if (e) return io::to_json(*e);
  return low ? "-inf" : "inf";
}

inline Json ball_check_json(const BallCheck& c) {
  Json j{{"property", c.property}, {"radius", c.radius}, {"checked", c.checked},
         {"passed", c.passed},     {"holds", c.holds()}};
  j["first_failure"] = c.first_failure ? Json(*c.first_failure) : Json(nullptr);
  return j;
}

inline Json suite_json(const SuiteReport& r) {
  Json j{{"property", r.property}, {"seed", r.seed},     {"checked", r.checked},
         {"passed", r.passed},     {"holds", r.holds()}};
  j["first_failure"] = r.first_failure ? Json(*r.first_failure) : Json(nullptr);
  return j;
}

inline std::vector<NamedMap> named(const std::vector<PLMap>& maps, const std::vector<std::string>& names) {
  std::vector<NamedMap> out;
  for (std::size_t i = 0; i < maps.size(); ++i) out.push_back({names[i], maps[i]});
  return out;
}

/// Slope group generated by every slope occurring in the maps.
inline SlopeGroup slopes_of(const std::vector<PLMap>& maps) {
  std::vector<Rational> gens;
  for (auto& f : maps) {
    for (auto& s : f.slopes()) {
      if (!s.is_rational()) fail(ErrorKind::Unsupported, "irrational slope " + s.str());
      Rational q = s.as_rational();
      if (q != 1 && std::find(gens.begin(), gens.end(), q) == gens.end()) gens.push_back(q);
    }
  }
  return SlopeGroup::rational(gens);
}

inline const std::vector<CharacterSpec>& default_rays() {
  static const std::vector<CharacterSpec> rays = {
      CharacterSpec::chi_l(),      CharacterSpec::chi_r(),      CharacterSpec::slope(-1, 0),
      CharacterSpec::slope(0, -1), CharacterSpec::slope(1, 1),  CharacterSpec::slope(1, -1),
      CharacterSpec::slope(-1, 1), CharacterSpec::slope(-1, -1), CharacterSpec::slope(2, 1),
      CharacterSpec::slope(1, 2),  CharacterSpec::slope(-2, 1), CharacterSpec::slope(1, -2),
      CharacterSpec::slope(3, -1), CharacterSpec::slope(-1, 3)};
  return rays;
}

inline std::string pad(const std::string& s, std::size_t width) {
  // Width counts code points so that σ, χ and the like align.
  std::size_t n = 0;
  for (unsigned char c : s) n += (c & 0xC0) != 0x80;
  return s + std::string(width > n ? width - n : 1, ' ');
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Command implementations.

inline Outcome map_eval(const std::string& path, const std::string& t) {
  auto m = detail::load_map(path);
  Scalar x = Scalar::parse(t);
  return detail::report({{"property", "evaluation"}, {"t", io::to_json(x)}, {"value", io::to_json(m.map(x))}});
}

inline Outcome map_compose(const std::string& a, const std::string& b) {
  auto f = detail::load_map(a);
  auto g = detail::load_map(b);
  return detail::map_out(compose(f.map, g.map), f.interval);
}

inline Outcome map_support(const std::string& path) {
  auto m = detail::load_map(path);
  auto rep = fix_support(m.map);
  Json fixed = Json::array(), comps = Json::array();
  for (auto& c : rep.fixed_set) {
    fixed.push_back(Json::array({detail::endpoint_json(c.lo, true), detail::endpoint_json(c.hi, false)}));
  }
  for (auto& c : rep.support_components) {
    comps.push_back(Json::array({detail::endpoint_json(c.lo, true), detail::endpoint_json(c.hi, false)}));
  }
  return detail::report({{"property", "fixed set and support components"},
                         {"fixed_set", fixed},
                         {"support_components", comps},
                         {"count", rep.count}});
}

inline Outcome map_germ(const std::string& path) {
  auto m = detail::load_map(path);
  Json j = detail::germ_json(germ_data(m.map, m.interval));
  j["property"] = "endpoint germs relative to " + m.interval.str();
  return detail::report(std::move(j));
}

inline Outcome verify_f_relations_cmd(const std::string& path, const std::string& f, const std::string& g) {
  auto group = detail::load_group(path);
  if (group.generators().size() < 2) fail(ErrorKind::InvalidInput, "need two generators");
  std::string fn = f.empty() ? group.generators()[0].name : f;
  std::string gn = g.empty() ? group.generators()[1].name : g;
  auto rep = verify_f_relations(group.generator(fn), group.generator(gn));
  Json checks = Json::array();
  for (auto& c : rep.checks) checks.push_back(Json{{"relation", c.name}, {"holds", c.holds}});
  return detail::report({{"property", "relator chains and presentation of Thompson's group F"},
                         {"f", fn},
                         {"g", gn},
                         {"checks", checks},
                         {"holds", rep.all_hold()}},
                        rep.all_hold() ? kOk : kFails);
}

inline Outcome group_ball(const std::string& path, std::size_t radius, std::size_t budget) {
  auto group = detail::load_group(path);
  Ball b = ball(group, radius, budget);
  Json spheres = Json::array();
  for (std::size_t r = 0; r <= radius; ++r) spheres.push_back(b.count_within(r) - (r ? b.count_within(r - 1) : 0));
  return detail::report({{"property", "ball in the word metric"},
                         {"radius", radius},
                         {"size", b.size()},
                         {"sphere_sizes", spheres}});
}

inline Outcome group_membership(const std::string& gpath, const std::string& mpath) {
  auto group = detail::load_group(gpath);
  auto m = detail::load_map(mpath);
  auto r = membership(group, m.map);
  int code = r.verdict == Verdict::Yes ? kOk : r.verdict == Verdict::No ? kFails : kUndecided;
  return detail::report({{"property", "membership in G(I;A,P)"},
                         {"ambient", "G(" + group.interval().str() + ";" + group.module().str() + "," +
                                         group.slopes().str() + ")"},
                         {"verdict", verdict_str(r.verdict)},
                         {"reason", r.reason},
                         {"certificate", r.certificate}},
                        code);
}

inline Outcome group_irreducible(const std::string& path) {
  auto group = detail::load_group(path);
  auto r = irreducible(group);
  Json j{{"property", "no common interior fixed point"}, {"irreducible", r.irreducible}};
  j["witness"] = r.witness ? io::to_json(*r.witness) : Json(nullptr);
  return detail::report(std::move(j), r.irreducible ? kOk : kFails);
}

inline Outcome group_independence(const std::string& path) {
  auto group = detail::load_group(path);
  auto r = independence(group);
  Json j{{"property", "G = ker chi_l * ker chi_r up to finite index"},
         {"kind", r.kind_str()},
         {"im_chi_l", r.left.str()},
         {"im_chi_r", r.right.str()},
         {"joint", r.joint.str()}};
  j["index"] = r.index ? Json(r.index->str()) : Json("inf");
  return detail::report(std::move(j));
}

inline Outcome group_psi_invariance(const std::string& path, const std::string& auto_spec,
                                    std::size_t radius, std::size_t budget) {
  auto group = detail::load_group(path);
  auto alpha = detail::automorphism(group, auto_spec);
  Json j = detail::ball_check_json(psi_invariance(group, alpha, radius, budget));
  bool holds = j["holds"];
  j["automorphism"] = alpha.name();
  if (!alpha.increasing()) {
    auto swap = decreasing_swap_check(group, alpha, radius, budget);
    j["swap"] = detail::ball_check_json(swap);
    holds = holds && swap.holds();
  }
  return detail::report(std::move(j), holds ? kOk : kFails);
}

inline Outcome char_sign_cmd(const std::string& gpath, const std::string& mpath, const std::string& spec) {
  auto group = detail::load_group(gpath);
  auto m = detail::load_map(mpath);
  auto chi = CharacterSpec::parse(spec);
  return detail::report({{"property", "exact sign of a character"},
                         {"character", chi.str()},
                         {"sign", char_sign(chi, germ_data(m.map, group.interval()))}});
}

inline Outcome char_image_cmd(const std::string& gpath, const std::string& spec) {
  auto group = detail::load_group(gpath);
  auto chi = CharacterSpec::parse(spec);
  auto img = char_image(group, chi);
  return detail::report({{"property", "image of a character as a lattice"},
                         {"character", chi.str()},
                         {"image", img.str()},
                         {"zero", img.lattice.rank() == 0}});
}

inline Outcome units_trivial_cmd(const std::string& p) {
  auto r = units_trivial(SlopeGroup::parse(p));
  return detail::report({{"property", "U(Z[P]) = {1,-1}"}, {"trivial", r.trivial}, {"certificate", r.certificate}},
                        r.trivial ? kOk : kFails);
}

inline Outcome units_indep_cmd(const std::string& values) {
  bool ind = multiplicatively_independent(detail::rationals(values));
  return detail::report({{"property", "multiplicative independence"}, {"values", values}, {"independent", ind}},
                        ind ? kOk : kFails);
}

inline Outcome units_lemma75_cmd(const std::string& p1, const std::string& p2) {
  auto r = lemma75_distinct(SlopeGroup::parse(p1), SlopeGroup::parse(p2));
  std::string summary = r.verdict_str();
  if (r.prime) summary += ", π=" + r.prime->str();
  return detail::report({{"property", "ln P2 differs from u * ln P1 for every real u"},
                         {"summary", summary},
                         {"rank_p1", r.rank1},
                         {"reason", r.reason}},
                        r.verdict == Lemma75Result::Verdict::DistinctForAllU ? kOk : kUndecided);
}

inline Outcome units_gl2z_cmd(const std::string& x, const std::string& y) {
  auto a = ExtendedReal::parse(x);
  auto b = ExtendedReal::parse(y);
  bool eq = gl2z_equivalent(a, b);
  Json j{{"property", "same orbit under GL(2,Z) fractional linear maps"}, {"x", a.str()}, {"y", b.str()}};
  auto cf = [](const ExtendedReal& e) -> Json {
    if (!e.value) return nullptr;
    auto c = continued_fraction(*e.value);
    Json pre = Json::array(), per = Json::array();
    for (auto& t : c.preperiod) pre.push_back(t.str());
    for (auto& t : c.period) per.push_back(t.str());
    return Json{{"preperiod", pre}, {"period", per}};
  };
  j["cf_x"] = cf(a);
  j["cf_y"] = cf(b);
  j["equivalent"] = eq;
  return detail::report(std::move(j), eq ? kOk : kFails);
}

inline Outcome twisted_twist(const std::string& gpath, const std::string& z, const std::string& x,
                             const std::string& auto_spec) {
  auto group = detail::load_group(gpath);
  auto alpha = detail::automorphism(group, auto_spec);
  return detail::map_out(twist(detail::load_map(z).map, detail::load_map(x).map, alpha), group.interval());
}

inline Json invariants_json(const InvariantSelection& sel, const std::vector<std::string>& tuple) {
  Json j = Json::object();
  auto names = sel.names();
  for (std::size_t i = 0; i < names.size(); ++i) j[names[i]] = tuple[i];
  return j;
}

inline Outcome twisted_invariant(const std::string& gpath, const std::string& x, const std::string& auto_spec,
                                 std::size_t radius, std::size_t budget) {
  auto group = detail::load_group(gpath);
  auto alpha = detail::automorphism(group, auto_spec);
  auto sel = select_invariants(group, alpha, radius, budget);
  auto tuple = invariant_tuple(group, detail::load_map(x).map, alpha, sel);
  return detail::report({{"property", "twisted conjugacy invariants"},
                         {"automorphism", alpha.name()},
                         {"selection_radius", radius},
                         {"invariants", invariants_json(sel, tuple)}});
}

inline Outcome twisted_separate(const std::string& gpath, const std::vector<std::string>& xs,
                                const std::string& auto_spec, std::size_t radius, std::size_t budget) {
  auto group = detail::load_group(gpath);
  auto alpha = detail::automorphism(group, auto_spec);
  std::vector<PLMap> maps;
  for (auto& x : xs) maps.push_back(detail::load_map(x).map);
  auto rep = separate_classes(group, maps, alpha, radius, budget);
  Json cells = Json::array();
  for (auto& c : rep.cells) {
    Json members = Json::array();
    for (auto i : c.members) members.push_back(xs[i]);
    cells.push_back(Json{{"invariants", invariants_json(rep.selection, c.invariants)},
                         {"members", members},
                         {"inconclusive", c.inconclusive()}});
  }
  return detail::report({{"property", "inputs in different cells lie in different twisted classes"},
                         {"automorphism", alpha.name()},
                         {"invariants", rep.selection.names()},
                         {"certified_distinct", rep.certified_distinct()},
                         {"cells", cells}});
}

inline Outcome twisted_homothety(const std::string& gpath, const std::string& p, std::size_t radius,
                                 std::size_t budget) {
  auto group = detail::load_group(gpath);
  auto c = homothety_pullback_check(group, Scalar::parse(p), radius, budget);
  Json j = detail::ball_check_json(c);
  j["p"] = p;
  return detail::report(std::move(j), c.holds() ? kOk : kFails);
}

inline FGGroup thompson_group() {
  return FGGroup(Interval::compact(Scalar(1)), SlopeGroup::rational({2}), ModuleSpec::dyadic_like(2),
                 {{"x0", construct::dyadic_bump(Scalar(0), Scalar(1))},
                  {"x1", construct::dyadic_bump(Scalar::fraction(1, 2), Scalar(1))}});
}

inline Outcome twisted_orbit_suite(const std::string& gpath, const std::string& auto_spec, std::uint64_t seed,
                                   std::size_t count, std::size_t radius, std::size_t budget) {
  FGGroup group = gpath.empty() ? thompson_group() : detail::load_group(gpath);
  auto alpha = detail::automorphism(group, auto_spec);
  auto sel = select_invariants(group, alpha, radius, budget);
  auto rep = twist_orbit_suite(group, alpha, sel, seed, count);
  Json j = detail::suite_json(rep);
  j["invariants"] = sel.names();
  return detail::report(std::move(j), rep.holds() ? kOk : kFails);
}

inline Json component_json(const ComponentReport& r) {
  return Json{{"radius", r.radius},       {"slack", r.slack},           {"character", r.character},
              {"ball_size", r.ball_size}, {"vertices", r.vertices},     {"components", r.components},
              {"sizes", r.sizes}};
}

inline Outcome sigma1_ball(const std::string& gpath, const std::string& spec, std::size_t radius,
                           std::size_t slack, std::size_t budget) {
  auto group = detail::load_group(gpath);
  auto chi = CharacterSpec::parse(spec);
  if (chi.flavor != CharacterSpec::Flavor::Slope) {
    fail(ErrorKind::Unsupported, "rays are sampled from slope characters only");
  }
  if (char_is_zero(group, chi)) fail(ErrorKind::InvalidInput, "character " + chi.str() + " is zero on G");
  Ball b = ball(group, radius + slack, budget, true);
  auto signs = ball_signs(group, b, chi);
  // Counts at every radius up to the requested one form the merge history.
  Json history = Json::array();
  ComponentReport last;
  for (std::size_t r = 0; r <= radius; ++r) {
    last = components_in(b, signs, chi, r, slack);
    history.push_back(last.components);
  }
  Json j = component_json(last);
  j["property"] = "components of ball(G,r) in the subgraph on chi >= 0";
  j["history"] = history;
  j["caveat"] = kSigma1Caveat;
  return {kOk, std::string(kSigma1Caveat) + "\n" +
                   io::Document{io::kFormatVersion, "report", std::move(j)}.emit()};
}

inline Outcome sigma1_evidence_cmd(const std::string& gpath, const std::vector<std::string>& ray_specs,
                                   std::size_t rmax, const Sigma1Options& options) {
  auto group = detail::load_group(gpath);
  std::vector<CharacterSpec> rays;
  for (auto& s : ray_specs) rays.push_back(CharacterSpec::parse(s));
  if (rays.empty()) rays = detail::default_rays();
  auto ev = sigma1_evidence(group, rays, rmax, options);

  std::ostringstream text;
  text << "hypotheses\n";
  Json hyps = Json::array();
  for (auto& h : ev.hypotheses) {
    text << "  " << detail::pad(h.name, 34) << (h.holds ? "yes" : "no");
    if (!h.detail.empty()) text << "  (" << h.detail << ")";
    text << "\n";
    hyps.push_back(Json{{"name", h.name}, {"holds", h.holds}, {"detail", h.detail}});
  }
  Json rays_json = Json::array();
  if (ev.hypotheses_hold()) {
    text << detail::pad("ray", 16);
    for (std::size_t r = 1; r <= rmax; ++r) text << std::setw(7) << ("r=" + std::to_string(r));
    text << "  " << detail::pad("certificate", 24) << "classification\n";
    for (auto& re : ev.rays) {
      text << detail::pad(re.ray.str(), 16);
      for (auto c : re.counts) text << std::setw(7) << c;
      std::string cert = re.certificate.found
                             ? "t=" + plg::detail::letter_str(*re.certificate.t) + " radius " +
                                   std::to_string(re.certificate.search_radius)
                             : "none";
      text << "  " << detail::pad(cert, 24) << re.classification << "\n";
      Json paths = Json::array();
      for (auto& p : re.certificate.paths) {
        paths.push_back(Json{{"y", plg::detail::letter_str(p.y)}, {"word", p.word.str()}});
      }
      Json cj{{"found", re.certificate.found}, {"search_radius", re.certificate.search_radius}};
      cj["t"] = re.certificate.t ? Json(plg::detail::letter_str(*re.certificate.t)) : Json(nullptr);
      cj["paths"] = paths;
      if (!re.certificate.found) cj["failure"] = re.certificate.failure;
      rays_json.push_back(Json{{"ray", re.ray.str()},
                               {"counts", re.counts},
                               {"certificate", cj},
                               {"classification", re.classification}});
    }
  } else {
    text << "hypothesis failure: no classification\n";
  }
  text << kSigma1Caveat << "\n";
  Json j{{"property", "connectivity of the subgraph on chi >= 0 per character ray"},
         {"rmax", rmax},
         {"slack", options.slack},
         {"search_radius", options.search_radius},
         {"hypotheses", hyps},
         {"hypotheses_hold", ev.hypotheses_hold()},
         {"rays", rays_json},
         {"caveat", kSigma1Caveat}};
  text << io::Document{io::kFormatVersion, "report", std::move(j)}.emit();
  return {ev.hypotheses_hold() ? kOk : kFails, text.str()};
}

// ---------------------------------------------------------------------------
// Argument parsing.

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations with groups of piecewise linear homeomorphisms", "plg"};
  app.require_subcommand(1);
  std::function<Outcome()> action;

  std::string out_path;
  std::size_t radius = 2, budget = kDefaultBudget, count = 500, slack = 0, search_radius = 0;
  std::uint64_t seed = 1;
  std::string a, b, c, auto_spec = "reflection", character = "chi_l";
  std::vector<std::string> many;
  app.add_option("--out", out_path, "write the result to this file");

  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help) {
    CLI::App* sub = parent->add_subcommand(name, help);
    sub->add_option("--out", out_path, "write the result to this file");
    return sub;
  };
  auto with_radius = [&](CLI::App* sub) {
    sub->add_option("--radius", radius, "ball radius")->capture_default_str();
    sub->add_option("--budget", budget, "maximal ball size")->capture_default_str();
  };
  auto with_seed = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "seed for random samples")->capture_default_str();
    sub->add_option("--count", count, "number of random samples")->capture_default_str();
  };

  // map
  auto* map = app.add_subcommand("map", "single PL maps");
  map->require_subcommand(1);
  auto* m_eval = leaf(map, "eval", "evaluate a map at a point");
  m_eval->add_option("map", a)->required();
  m_eval->add_option("t", b)->required();
  m_eval->callback([&] { action = [&] { return map_eval(a, b); }; });
  auto* m_compose = leaf(map, "compose", "a∘b");
  m_compose->add_option("a", a)->required();
  m_compose->add_option("b", b)->required();
  m_compose->callback([&] { action = [&] { return map_compose(a, b); }; });
  auto* m_invert = leaf(map, "invert", "inverse map");
  m_invert->add_option("map", a)->required();
  m_invert->callback([&] {
    action = [&] {
      auto m = detail::load_map(a);
      return detail::map_out(invert(m.map), m.interval);
    };
  });
  auto* m_canon = leaf(map, "canon", "canonical form");
  m_canon->add_option("map", a)->required();
  m_canon->callback([&] {
    action = [&] {
      auto m = detail::load_map(a);
      return detail::map_out(m.map, m.interval);
    };
  });
  auto* m_support = leaf(map, "support", "fixed set and support components");
  m_support->add_option("map", a)->required();
  m_support->callback([&] { action = [&] { return map_support(a); }; });
  auto* m_germ = leaf(map, "germ", "endpoint germs");
  m_germ->add_option("map", a)->required();
  m_germ->callback([&] { action = [&] { return map_germ(a); }; });

  // construct
  auto* con = app.add_subcommand("construct", "explicit maps and groups");
  con->require_subcommand(1);
  auto* c_bump = leaf(con, "bump", "two-piece bump on [0,b]");
  c_bump->add_option("--s", a, "slope parameter")->required();
  std::string bump_b = "1";
  c_bump->add_option("--b", bump_b, "right end")->capture_default_str();
  c_bump->callback([&] {
    action = [&] {
      Scalar end = Scalar::parse(bump_b);
      return detail::map_out(construct::bump(Scalar::parse(a), end), Interval::compact(end));
    };
  });
  auto* c_gs = leaf(con, "gs", "group generated by f_s, g_s, h_s on [0,1]");
  c_gs->add_option("--s", a, "s1,s2,s3")->required();
  c_gs->callback([&] {
    action = [&] {
      auto s = detail::scalars(a);
      if (s.size() != 3) fail(ErrorKind::InvalidInput, "--s needs three values");
      auto fgh = construct::gs_family(s[0], s[1], s[2]);
      std::vector<PLMap> maps{fgh.f, fgh.g, fgh.h};
      return detail::group_out(FGGroup(Interval::compact(Scalar(1)), detail::slopes_of(maps),
                                       ModuleSpec::rationals(), detail::named(maps, {"f", "g", "h"})));
    };
  });
  auto* c_dyadic = leaf(con, "dyadic", "f_s, g_s, h_s with s1 = s2 = 2");
  std::string s3 = "2";
  c_dyadic->add_option("--s3", s3, "third parameter, at least 2")->capture_default_str();
  c_dyadic->callback([&] {
    action = [&] {
      Scalar s = Scalar::parse(s3);
      auto fgh = construct::dyadic_fgh(s);
      std::vector<PLMap> maps{fgh.f, fgh.g, fgh.h};
      ModuleSpec mod = s == Scalar(2) ? ModuleSpec::dyadic_like(2) : ModuleSpec::rationals();
      return detail::group_out(FGGroup(Interval::compact(Scalar(1)), detail::slopes_of(maps), mod,
                                       detail::named(maps, {"f", "g", "h"})));
    };
  });
  auto* c_multi = leaf(con, "multibump", "n dyadic bumps side by side inside (lo,hi) of [0,1]");
  int n = 1;
  std::string region = "0,1/2";
  c_multi->add_option("--n", n, "number of bumps")->required();
  c_multi->add_option("--region", region, "lo,hi")->capture_default_str();
  c_multi->callback([&] {
    action = [&] {
      auto r = detail::scalars(region);
      if (r.size() != 2) fail(ErrorKind::InvalidInput, "--region needs two values");
      return detail::map_out(construct::multibump(n, r[0], r[1]), Interval::compact(Scalar(1)));
    };
  });
  auto* c_l72 = leaf(con, "lemma72", "pair generating Thompson's group F with prescribed end slopes");
  c_l72->add_option("--sf", a, "slope of f at a")->required();
  c_l72->add_option("--sg", b, "slope of g at d")->required();
  std::string abcd = "0,1/4,3/4,1";
  c_l72->add_option("--abcd", abcd, "a,b,c,d")->capture_default_str();
  c_l72->callback([&] {
    action = [&] {
      auto p = detail::scalars(abcd);
      if (p.size() != 4) fail(ErrorKind::InvalidInput, "--abcd needs four values");
      auto pair = construct::lemma72_pair(Scalar::parse(a), Scalar::parse(b), p[0], p[1], p[2], p[3]);
      std::vector<PLMap> maps{pair.f, pair.g};
      Interval in = p[0].sign() >= 0 ? Interval::compact(p[3]) : Interval::line();
      return detail::group_out(
          FGGroup(in, detail::slopes_of(maps), ModuleSpec::rationals(), detail::named(maps, {"f", "g"})));
    };
  });
  auto* c_ind = leaf(con, "independent", "bumps at both ends with independent endpoint slopes");
  c_ind->add_option("--left", a, "slopes of the left bumps")->required();
  c_ind->add_option("--right", b, "slopes of the right bumps")->required();
  std::string b1 = "3/4";
  c_ind->add_option("--b1", b1, "support length of each bump")->capture_default_str();
  c_ind->callback([&] {
    action = [&] {
      auto l = detail::scalars(a), r = detail::scalars(b);
      auto maps = construct::independent_bumps(l, r, Scalar::parse(b1), Scalar(1));
      std::vector<std::string> names;
      for (std::size_t i = 0; i < l.size(); ++i) names.push_back("f" + std::to_string(i + 1));
      for (std::size_t i = 0; i < r.size(); ++i) names.push_back("g" + std::to_string(i + 1));
      return detail::group_out(FGGroup(Interval::compact(Scalar(1)), detail::slopes_of(maps),
                                       ModuleSpec::rationals(), detail::named(maps, names)));
    };
  });
  auto* c_end = leaf(con, "end-bumps", "f_s, g_s joined by bumps near both ends");
  std::string sl = "2", sr = "3";
  c_end->add_option("--sl", sl, "left slope parameter")->capture_default_str();
  c_end->add_option("--sr", sr, "right slope parameter")->capture_default_str();
  c_end->callback([&] {
    action = [&] {
      auto maps = construct::end_bump_family(Scalar::parse(sl), Scalar::parse(sr));
      return detail::group_out(FGGroup(Interval::compact(Scalar(1)), detail::slopes_of(maps),
                                       ModuleSpec::rationals(), detail::named(maps, {"f", "g", "u", "v"})));
    };
  });
  auto* c_primes = leaf(con, "primes", "pairs f_p, g_p with sigma_l(f_p) = sigma_r(g_p) = p");
  c_primes->add_option("--p", a, "primes")->required();
  c_primes->callback([&] {
    action = [&] {
      auto ps = detail::scalars(a);
      std::vector<std::string> names;
      for (auto& p : ps) {
        names.push_back("f_" + p.str());
        names.push_back("g_" + p.str());
      }
      auto maps = construct::prime_pairs(ps);
      return detail::group_out(FGGroup(Interval::compact(Scalar(1)), detail::slopes_of(maps),
                                       ModuleSpec::rationals(), detail::named(maps, names)));
    };
  });
  auto* c_half = leaf(con, "half-line", "maps of [0,inf) ending in translations");
  c_half->callback([&] {
    action = [&] {
      return detail::group_out(FGGroup(Interval::half_line(), SlopeGroup::rational({2, 3}),
                                       ModuleSpec::dyadic_like(6),
                                       detail::named(construct::half_line_translations(), {"a", "b", "c"})));
    };
  });
  auto* c_f = leaf(con, "thompson", "Thompson's group F on [0,1]");
  c_f->callback([&] { action = [&] { return detail::group_out(thompson_group()); }; });

  // verify
  auto* ver = app.add_subcommand("verify", "identities checked exactly");
  ver->require_subcommand(1);
  auto* v_f = leaf(ver, "f-relations", "relators of Thompson's group F for a generator pair");
  v_f->add_option("group", a)->required();
  v_f->add_option("--f", b, "first generator (default: first in the group)");
  v_f->add_option("--g", c, "second generator (default: second in the group)");
  v_f->callback([&] { action = [&] { return verify_f_relations_cmd(a, b, c); }; });
  auto* v_line = leaf(ver, "line-reflection", "reflection/germ identity on random line maps");
  with_seed(v_line);
  v_line->callback([&] {
    action = [&] {
      auto r = line_reflection_suite(seed, count);
      return detail::report(detail::suite_json(r), r.holds() ? kOk : kFails);
    };
  });
  auto* v_hom = leaf(ver, "homomorphism", "germ homomorphisms on random pairs");
  v_hom->add_option("group", a)->required();
  with_seed(v_hom);
  v_hom->callback([&] {
    action = [&] {
      auto r = homomorphism_suite(detail::load_group(a), seed, count);
      return detail::report(detail::suite_json(r), r.holds() ? kOk : kFails);
    };
  });

  // group
  auto* grp = app.add_subcommand("group", "finitely generated groups");
  grp->require_subcommand(1);
  auto* g_ball = leaf(grp, "ball", "ball in the word metric");
  g_ball->add_option("group", a)->required();
  with_radius(g_ball);
  g_ball->callback([&] { action = [&] { return group_ball(a, radius, budget); }; });
  auto* g_mem = leaf(grp, "membership", "membership of a map in G(I;A,P)");
  g_mem->add_option("group", a)->required();
  g_mem->add_option("map", b)->required();
  g_mem->callback([&] { action = [&] { return group_membership(a, b); }; });
  auto* g_irr = leaf(grp, "irreducible", "no common interior fixed point");
  g_irr->add_option("group", a)->required();
  g_irr->callback([&] { action = [&] { return group_irreducible(a); }; });
  auto* g_ind = leaf(grp, "independence", "independence of chi_l and chi_r");
  g_ind->add_option("group", a)->required();
  g_ind->callback([&] { action = [&] { return group_independence(a); }; });
  auto* g_psi = leaf(grp, "psi-invariance", "psi∘alpha = psi on a ball");
  g_psi->add_option("group", a)->required();
  g_psi->add_option("--auto", auto_spec, "identity | reflection | homothety:p | automorphism file")
      ->capture_default_str();
  with_radius(g_psi);
  g_psi->callback([&] { action = [&] { return group_psi_invariance(a, auto_spec, radius, budget); }; });

  // char
  auto* chr = app.add_subcommand("char", "characters chi_l, chi_r, tau_l, tau_r and combinations");
  chr->require_subcommand(1);
  auto* ch_sign = leaf(chr, "sign", "exact sign on an element");
  ch_sign->add_option("group", a)->required();
  ch_sign->add_option("map", b)->required();
  ch_sign->add_option("--char", character)->capture_default_str();
  ch_sign->callback([&] { action = [&] { return char_sign_cmd(a, b, character); }; });
  auto* ch_img = leaf(chr, "image", "image lattice");
  ch_img->add_option("group", a)->required();
  ch_img->add_option("--char", character)->capture_default_str();
  ch_img->callback([&] { action = [&] { return char_image_cmd(a, character); }; });

  // units
  auto* un = app.add_subcommand("units", "number-theoretic checks");
  un->require_subcommand(1);
  auto* u_triv = leaf(un, "trivial", "U(Z[P]) = {1,-1}");
  u_triv->add_option("--p", a, "generators of P")->required();
  u_triv->callback([&] { action = [&] { return units_trivial_cmd(a); }; });
  auto* u_ind = leaf(un, "indep", "multiplicative independence");
  u_ind->add_option("--values", a)->required();
  u_ind->callback([&] { action = [&] { return units_indep_cmd(a); }; });
  auto* u_75 = leaf(un, "lemma75", "prime-support criterion for ln P2 != u ln P1");
  u_75->add_option("--p1", a)->required();
  u_75->add_option("--p2", b)->required();
  u_75->callback([&] { action = [&] { return units_lemma75_cmd(a, b); }; });
  auto* u_gl = leaf(un, "gl2z", "GL(2,Z) equivalence of two reals");
  u_gl->add_option("--x", a)->required();
  u_gl->add_option("--y", b)->required();
  u_gl->callback([&] { action = [&] { return units_gl2z_cmd(a, b); }; });

  // twisted
  auto* tw = app.add_subcommand("twisted", "twisted conjugacy");
  tw->require_subcommand(1);
  auto* t_twist = leaf(tw, "twist", "z∘x∘alpha(z)^-1");
  t_twist->add_option("group", a)->required();
  t_twist->add_option("z", b)->required();
  t_twist->add_option("x", c)->required();
  t_twist->add_option("--auto", auto_spec)->capture_default_str();
  t_twist->callback([&] { action = [&] { return twisted_twist(a, b, c, auto_spec); }; });
  auto* t_inv = leaf(tw, "invariant", "invariants of the twisted class of x");
  t_inv->add_option("group", a)->required();
  t_inv->add_option("x", b)->required();
  t_inv->add_option("--auto", auto_spec)->capture_default_str();
  with_radius(t_inv);
  t_inv->callback([&] { action = [&] { return twisted_invariant(a, b, auto_spec, radius, budget); }; });
  auto* t_sep = leaf(tw, "separate", "partition inputs by invariants");
  t_sep->add_option("group", a)->required();
  t_sep->add_option("xs", many)->required();
  t_sep->add_option("--auto", auto_spec)->capture_default_str();
  with_radius(t_sep);
  t_sep->callback([&] { action = [&] { return twisted_separate(a, many, auto_spec, radius, budget); }; });
  auto* t_hom = leaf(tw, "homothety-check", "tau_r∘alpha_p = p*tau_r on a ball");
  t_hom->add_option("group", a)->required();
  t_hom->add_option("--p", b)->required();
  with_radius(t_hom);
  t_hom->callback([&] { action = [&] { return twisted_homothety(a, b, radius, budget); }; });
  auto* t_suite = leaf(tw, "orbit-suite", "invariants constant along random twisted orbits");
  t_suite->add_option("group", a, "group document (default: Thompson's group F)");
  t_suite->add_option("--auto", auto_spec)->capture_default_str();
  with_seed(t_suite);
  with_radius(t_suite);
  t_suite->callback([&] {
    action = [&] { return twisted_orbit_suite(a, auto_spec, seed, count, radius, budget); };
  });

  // sigma1
  auto* sg = app.add_subcommand("sigma1", "Cayley graph exploration for character rays");
  sg->require_subcommand(1);
  auto* s_ball = leaf(sg, "ball", "components of the ball in the subgraph on chi >= 0");
  s_ball->add_option("group", a)->required();
  s_ball->add_option("--char", character)->capture_default_str();
  s_ball->add_option("--slack", slack, "extra radius usable by paths")->capture_default_str();
  with_radius(s_ball);
  s_ball->callback([&] { action = [&] { return sigma1_ball(a, character, radius, slack, budget); }; });
  auto* s_ev = leaf(sg, "evidence", "per-ray trend table");
  s_ev->add_option("group", a)->required();
  s_ev->add_option("--ray", many, "character ray, repeatable (default: 14 sample rays)");
  s_ev->add_option("--slack", slack, "extra radius usable by paths")->capture_default_str();
  s_ev->add_option("--search-radius", search_radius, "ball radius for lifting certificates, 0 = off")
      ->capture_default_str();
  with_radius(s_ev);
  s_ev->callback([&] {
    action = [&] { return sigma1_evidence_cmd(a, many, radius, Sigma1Options{slack, search_radius, budget}); };
  });

  std::vector<std::string> argv_store{"plg"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInputError;
  }

  Outcome result;
  try {
    result = action();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::Unsupported:
      case ErrorKind::BudgetExceeded:
        return kUndecided;
      default:
        return kInputError;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  if (out_path.empty()) {
    out << result.text;
  } else {
    std::ofstream file(out_path, std::ios::binary);
    if (!file) {
      err << "error: cannot write '" << out_path << "'\n";
      return kInputError;
    }
    file << result.text;
  }
  return result.code;
}

}  // namespace plg::cli
