#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>

#ifndef AMC_FIXTURES_PATH
#define AMC_FIXTURES_PATH "data/fixtures.json"
#endif

namespace amc::cli {

namespace {

struct UsageError : Error {
  using Error::Error;
};

struct SchemeArgs {
  std::string scheme, point, monomial, apolar;
  int d = 0, c = -1;

  void attach(CLI::App* app) {
    app->add_option("--scheme", scheme, "rnc:d=6, mono:d=6,c=3, scroll:a=1,b=4, point:..., apolar:g1,g2");
    app->add_option("--point", point, "projection center, comma-separated rationals");
    app->add_option("--monomial-center", monomial, "d=6,c=3");
    app->add_option("--apolar", apolar, "g1,g2 in S,T");
    app->add_option("--d", d, "degree; with --c, the monomial projection");
    app->add_option("--c", c, "index of the monomial center");
  }

  std::string label() const {
    const int given = !scheme.empty() + !point.empty() + !monomial.empty() + !apolar.empty() + (d > 0);
    if (given != 1) throw UsageError("give exactly one of --scheme, --point, --monomial-center, --apolar, --d");
    if (!scheme.empty()) return scheme;
    if (!point.empty()) return "point:" + point;
    if (!monomial.empty()) return "mono:" + monomial;
    if (!apolar.empty()) return "apolar:" + apolar;
    if (c >= 0) return "mono:d=" + std::to_string(d) + ",c=" + std::to_string(c);
    return "rnc:d=" + std::to_string(d);
  }

  Target target() const { return Target(build_scheme(parse_scheme(label()))); }
};

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

/// Ring x0..xN (or y, z, a) large enough for every variable in the text.
Ring ring_for(const std::string& text) {
  static const std::regex var("([xyza])([0-9]+)");
  char prefix = 0;
  std::size_t n = 0;
  for (std::sregex_iterator it(text.begin(), text.end(), var), end; it != end; ++it) {
    const char p = (*it)[1].str()[0];
    if (prefix && p != prefix) throw UsageError("mixed variable names; pass --vars");
    prefix = p;
    n = std::max<std::size_t>(n, std::stoul((*it)[2].str()) + 1);
  }
  if (!prefix) throw UsageError("no variables found; pass --vars");
  return make_ring(std::string(1, prefix), n);
}

std::string status_text(const QRDecision& d) {
  std::string s = "QR(" + std::to_string(d.k) + "): " + to_string(d.status);
  if (d.positive)
    s += " (" + std::to_string(d.positive->quadrics.size()) + " rational quadrics, " +
         std::to_string(d.positive->algebraic.size()) + " algebraic families)";
  if (d.negative) {
    std::vector<std::string> f;
    for (const auto& p : d.negative->forms) f.push_back(p.to_string());
    s += " (forms in the radical: " + join(f, ", ") + ")";
  }
  if (!d.positive && !d.negative)
    s += " (span " + std::to_string(d.partial_span) + "/" + std::to_string(d.dim) + ", " +
         std::to_string(d.partial_forms) + " forms)";
  return s;
}

int decision_code(const QRDecision& d) {
  if (d.status != QRStatus::inconclusive) return decided;
  return d.capped ? resource_cap : inconclusive;
}

Outcome run_fixtures(const std::string& path, std::uint64_t seed);

struct Options {
  bool text = false;
  std::string out, verify_file, profile;
  std::uint64_t seed = 1;
  int max_samples = -1;
};

RankBudget budget_for(const Options& o) {
  RankBudget b = o.profile.empty() ? RankBudget::from_env() : RankBudget::named(o.profile);
  b.harvest.seed = o.seed;
  if (o.max_samples >= 0) b.harvest.max_samples = o.max_samples;
  return b;
}

Outcome dispatch(const std::vector<std::string>& args, Options& opt) {
  CLI::App app{"Quadric rank tools for projected rational normal curves", "amc"};
  app.fallthrough();
  app.require_subcommand(0, 1);
  app.add_flag("--text", opt.text, "human-readable output");
  app.add_flag("--json{false}", opt.text, "JSON output (default)");
  app.add_option("--out", opt.out, "write output to this file");
  app.add_option("--seed", opt.seed, "sampling seed");
  app.add_option("--profile", opt.profile, "quick, paper or exhaustive (default: AMC_BUDGET_PROFILE)");
  app.add_option("--max-samples", opt.max_samples, "harvest sample cap");
  app.add_option("--verify", opt.verify_file, "replay every certificate in a JSON file");

  std::string point, form, poly, vars, gens_text, ideal_file, order = "degrevlex", conjecture = "1.4", dspan = "5..6",
                                                             fixtures_path = AMC_FIXTURES_PATH, action;
  int k = 3, t = 3, samples = 3;
  std::size_t max_pairs = 200000;
  SchemeArgs sa;

  auto* apolar = app.add_subcommand("apolar", "apolar pair of a point or a form");
  apolar->add_option("--point", point);
  apolar->add_option("--form", form, "binary form in s,t");
  auto* rank = app.add_subcommand("rank", "rational normal curve rank of a point");
  rank->add_option("--point", point)->required();
  auto* param = app.add_subcommand("param", "parametrization of a projected curve");
  sa.attach(param);
  auto* gens = app.add_subcommand("gens", "quadric generators of a scheme");
  sa.attach(gens);
  auto* gb = app.add_subcommand("gb", "Groebner basis");
  gb->add_option("--ideal", ideal_file, "JSON file {\"vars\": [...], \"gens\": [...]}");
  gb->add_option("--gens", gens_text, "generators separated by ';'");
  gb->add_option("--vars", vars, "comma-separated variable names");
  gb->add_option("--order", order, "degrevlex, lex or elim:k");
  gb->add_option("--max-pairs", max_pairs);
  auto* quad = app.add_subcommand("quad", "rank of a quadric, or the minor sieve");
  quad->add_option("action", action, "rank or sieve")->required()->check(CLI::IsMember({"rank", "sieve"}));
  quad->add_option("--poly", poly);
  quad->add_option("--vars", vars);
  quad->add_option("--k", k);
  sa.attach(quad);
  auto* harvest = app.add_subcommand("harvest", "rank-3 or rank-4 quadrics from Q-maps");
  harvest->add_option("--k", k)->check(CLI::IsMember({3, 4}));
  sa.attach(harvest);
  auto* delta_cmd = app.add_subcommand("delta", "bounds on the span of rank <= t quadrics");
  delta_cmd->add_option("--t", t);
  sa.attach(delta_cmd);
  auto* certify = app.add_subcommand("certify", "certificate for or against QR(k)");
  certify->add_option("--k", k);
  sa.attach(certify);
  auto* rindex = app.add_subcommand("rank-index", "least k with QR(k)");
  sa.attach(rindex);
  auto* scan = app.add_subcommand("scan", "QR(3) over random centers");
  scan->add_option("--conjecture", conjecture)->check(CLI::IsMember({"1.2", "1.4"}));
  scan->add_option("--d", dspan, "range like 5..8");
  scan->add_option("--samples", samples);
  auto* fixtures = app.add_subcommand("fixtures", "replay the example corpus");
  fixtures->add_option("--file", fixtures_path);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    const auto subs = app.get_subcommands();
    return {decided, Json(), subs.empty() ? app.help() : subs.front()->help()};
  }

  Outcome out;
  if (!opt.verify_file.empty()) {
    std::ifstream in(opt.verify_file);
    if (!in) throw UsageError("cannot read " + opt.verify_file);
    Json doc;
    try {
      doc = Json::parse(in);
    } catch (const Json::exception& e) {
      throw UsageError(std::string("not JSON: ") + e.what());
    }
    auto r = verify_json(doc);
    out.json = {{"checked", r.checked}, {"failures", r.failures}, {"ok", r.ok()}};
    out.text = std::to_string(r.checked) + " certificates checked, " + std::to_string(r.failures.size()) + " failed";
    for (const auto& f : r.failures) out.text += "\n  " + f;
    out.code = r.ok() ? decided : invalid;
    return out;
  }

  const auto budget = budget_for(opt);
  auto wrap = [&](const std::string& verb, Json result) {
    return Json{{"command", verb}, {"seed", opt.seed}, {"profile", budget.profile}, {"result", std::move(result)}};
  };

  if (*apolar) {
    if (point.empty() == form.empty()) throw UsageError("apolar needs exactly one of --point, --form");
    const BinaryForm f = point.empty() ? parse_binary_form(form) : point_to_form(ProjPoint::parse(point));
    const auto pair = apolar_ideal(f);
    Json j = to_json(pair);
    j["rank"] = pair.d1();
    if (pair.d1() == 3) j["multiplicity_type"] = to_string(multiplicity_type(pair));
    out.json = wrap("apolar", j);
    out.text = "g1 = " + pair.g1.to_string() + "\ng2 = " + pair.g2.to_string() + "\nrank " + std::to_string(pair.d1());
  } else if (*rank) {
    const auto p = ProjPoint::parse(point);
    const int r = rnc_rank(p);
    out.json = wrap("rank", {{"point", p.to_string()}, {"rank", r}});
    out.text = "rank " + std::to_string(r);
  } else if (*param) {
    const auto spec = parse_scheme(sa.label());
    Parametrization par;
    if (spec.apolar) par = parametrize_apolar(*spec.apolar);
    else if (spec.center) par = parametrize_projection(*spec.center);
    else if (spec.kind == SchemeKind::monomial_projection) par = parametrize_projection(ProjPoint::torus_fixed(spec.d, spec.c));
    else throw UsageError("param needs a projected curve");
    Json comps = Json::array();
    std::string text;
    for (const auto& c : par.components) {
      comps.push_back(c.to_string());
      text += "  " + c.to_string() + "\n";
    }
    Json j = {{"apolar", to_json(par.pair)}, {"components", comps}, {"split", par.split},
              {"scroll", {{"a", par.pair.d1() - 2}, {"b", par.pair.d2() - 2}}}};
    out.json = wrap("param", j);
    out.text = "g1 = " + par.pair.g1.to_string() + ", g2 = " + par.pair.g2.to_string() + "\n" + text;
    out.text.pop_back();
  } else if (*gens) {
    const auto s = build_scheme(parse_scheme(sa.label()));
    out.json = wrap("gens", to_json(s));
    std::vector<std::string> g;
    for (const auto& p : s.basis) g.push_back("  " + p.to_string());
    out.text = s.spec.label() + ": dim I_2 = " + std::to_string(s.dim_i2()) + "\n" + join(g, "\n");
  } else if (*gb) {
    std::vector<std::string> names, texts;
    if (!ideal_file.empty()) {
      std::ifstream in(ideal_file);
      if (!in) throw UsageError("cannot read " + ideal_file);
      const auto j = Json::parse(in);
      names = j.at("vars").get<std::vector<std::string>>();
      texts = j.at("gens").get<std::vector<std::string>>();
      if (j.contains("order")) order = j.at("order").get<std::string>();
    } else {
      texts = split(gens_text, ';');
      if (!vars.empty()) names = split(vars, ',');
    }
    if (texts.empty()) throw UsageError("gb needs --ideal or --gens");
    Ring R = names.empty() ? with_order(ring_for(join(texts, " ")), parse_order(order))
                           : make_ring(names, parse_order(order));
    std::vector<Poly> ps;
    for (const auto& s : texts) ps.push_back(parse_poly(s, R));
    GroebnerLimits lim;
    lim.max_pairs = max_pairs;
    const auto G = buchberger(ps, lim);
    out.json = wrap("gb", to_json(G));
    std::vector<std::string> g;
    for (const auto& p : G.gens) g.push_back("  " + p.to_string());
    out.text = to_string(G.status) + ", " + std::to_string(G.gens.size()) + " elements\n" + join(g, "\n");
    out.code = G.complete() ? decided : resource_cap;
  } else if (*quad) {
    if (action == "rank") {
      if (poly.empty()) throw UsageError("quad rank needs --poly");
      Ring R = vars.empty() ? ring_for(poly) : make_ring(split(vars, ','));
      const Poly q = parse_poly(poly, R);
      const int r = quad_rank(q);
      out.json = wrap("quad", {{"action", "rank"}, {"quadric", q.to_string()}, {"rank", r}});
      out.text = "rank " + std::to_string(r);
    } else {
      const auto target = sa.target();
      const auto g = generic_matrix(target.scheme.basis);
      const auto hits = triangular_sieve(g, k, {}, budget.sieve);
      Json hs = Json::array();
      std::string text;
      for (const auto& h : hits) {
        hs.push_back(to_json(h));
        text += "\n  " + h.form.to_string() + "  (N = " + std::to_string(h.exponent) + ")";
      }
      out.json = wrap("quad", {{"action", "sieve"}, {"k", k}, {"scheme", target.scheme.spec.label()},
                               {"coefficient_ring", to_json(g.coeff_ring())}, {"hits", hs}});
      out.text = std::to_string(hits.size()) + " linear forms in the radical" + text;
    }
  } else if (*harvest) {
    const auto target = sa.target();
    const auto h = k == 3 ? rank3_harvest(target, budget.harvest) : rank4_harvest(target, budget.harvest);
    Json j = to_json(h);
    j["scheme"] = target.scheme.spec.label();
    out.json = wrap("harvest", j);
    out.text = std::to_string(h.items.size()) + "/" + std::to_string(h.target_dim) + " independent rank <= " +
               std::to_string(k) + " quadrics after " + std::to_string(h.samples) + " samples";
  } else if (*delta_cmd) {
    const auto target = sa.target();
    const auto b = delta(target, t, budget);
    Json j = to_json(b);
    j["scheme"] = target.scheme.spec.label();
    out.json = wrap("delta", j);
    out.text = "delta(X," + std::to_string(t) + ") in [" + std::to_string(b.lower) + ", " + std::to_string(b.upper) +
               "], dim I_2 = " + std::to_string(b.dim);
    out.code = b.exact() ? decided : b.capped ? resource_cap : inconclusive;
  } else if (*certify) {
    const auto target = sa.target();
    const auto d = certify_qr(target, k, budget);
    Json j = to_json(d);
    j["scheme"] = target.scheme.spec.label();
    out.json = wrap("certify", j);
    out.text = target.scheme.spec.label() + ": " + status_text(d);
    out.code = decision_code(d);
  } else if (*rindex) {
    const auto target = sa.target();
    const auto r = rank_index(target, budget);
    Json j = to_json(r);
    j["scheme"] = target.scheme.spec.label();
    out.json = wrap("rank-index", j);
    out.text = target.scheme.spec.label() + ": rank index " +
               (r.exact() ? std::to_string(r.lower)
                          : "in [" + std::to_string(r.lower) + ", " + (r.upper ? std::to_string(*r.upper) : "?") + "]");
    out.code = r.exact() ? decided : inconclusive;
    for (const auto& l : r.levels) {
      out.text += "\n  " + status_text(l);
      if (!r.exact() && l.capped) out.code = resource_cap;
    }
  } else if (*scan) {
    const auto dots = dspan.find("..");
    int lo = 0, hi = 0;
    try {
      lo = std::stoi(dspan.substr(0, dots));
      hi = dots == std::string::npos ? lo : std::stoi(dspan.substr(dots + 2));
    } catch (const std::exception&) {
      throw UsageError("--d takes a range like 5..8");
    }
    const auto r = conjecture_scan(conjecture, lo, hi, samples, opt.seed, budget);
    out.json = wrap("scan", to_json(r));
    std::map<std::string, std::map<std::string, int>> tally;
    for (const auto& e : r.entries) ++tally[e.stratum][to_string(e.decision.status)];
    for (const auto& [stratum, counts] : tally) {
      out.text += stratum + ":";
      for (const auto& [status, n] : counts) out.text += " " + status + " " + std::to_string(n);
      out.text += "\n";
    }
    if (!out.text.empty()) out.text.pop_back();
  } else if (*fixtures) {
    return run_fixtures(fixtures_path, opt.seed);
  } else {
    throw UsageError("no command given\n" + app.help());
  }
  return out;
}

Outcome run_fixtures(const std::string& path, std::uint64_t seed) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  const Json corpus = Json::parse(in);
  Json items = Json::array();
  std::size_t passed = 0;
  Outcome out;
  for (const auto& f : corpus.at("fixtures")) {
    const auto id = f.at("id").get<std::string>();
    auto argv = f.at("argv").get<std::vector<std::string>>();
    if (!argv.empty() && argv.front() == "fixtures") throw UsageError("fixture " + id + " is recursive");
    argv.insert(argv.begin(), {"--seed", std::to_string(seed)});
    Outcome r = execute(argv);
    Json checks = Json::array();
    bool ok = r.code == f.value("exit", 0);
    checks.push_back({{"check", "exit"}, {"expected", f.value("exit", 0)}, {"actual", r.code}});
    for (const auto& [ptr, expected] : f.at("expect").items()) {
      const Json::json_pointer p(ptr);
      const Json actual = r.json.contains(p) ? r.json.at(p) : Json();
      const bool pass = actual == expected;
      ok = ok && pass;
      checks.push_back({{"check", ptr}, {"expected", expected}, {"actual", actual}});
    }
    passed += ok;
    items.push_back({{"id", id}, {"pass", ok}, {"checks", checks}, {"output", r.json}});
    out.text += (ok ? "pass  " : "FAIL  ") + id + "\n";
  }
  const std::size_t failed = items.size() - passed;
  out.json = {{"command", "fixtures"}, {"seed", seed}, {"fixtures", items}, {"passed", passed}, {"failed", failed}};
  out.text += std::to_string(passed) + " passed, " + std::to_string(failed) + " failed";
  out.code = failed == 0 ? decided : invalid;
  return out;
}

Outcome execute_with(const std::vector<std::string>& args, Options& opt) {
  try {
    return dispatch(args, opt);
  } catch (const CLI::ParseError& e) {
    return {usage, {{"error", e.what()}}, e.what()};
  } catch (const UsageError& e) {
    return {usage, {{"error", e.what()}}, e.what()};
  } catch (const ConsistencyError& e) {
    return {invalid, {{"error", e.what()}}, e.what()};
  } catch (const Error& e) {
    return {usage, {{"error", e.what()}}, e.what()};
  } catch (const Json::exception& e) {
    return {usage, {{"error", e.what()}}, e.what()};
  }
}

}  // namespace

Outcome execute(const std::vector<std::string>& args) {
  Options opt;
  return execute_with(args, opt);
}

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  Options opt;
  Outcome r = execute_with(args, opt);
  if (r.code == usage) {
    std::cerr << r.text << "\n";
    return r.code;
  }
  const std::string body = (opt.text || r.json.is_null()) ? r.text + "\n" : r.json.dump(2) + "\n";
  if (opt.out.empty()) {
    std::cout << body;
  } else {
    std::ofstream f(opt.out);
    if (!f) {
      std::cerr << "cannot write " << opt.out << "\n";
      return usage;
    }
    f << body;
  }
  return r.code;
}

}  // namespace amc::cli
