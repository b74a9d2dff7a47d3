#include <chrono>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mseg/core.hpp"
#include "mseg/coxeter.hpp"
#include "mseg/error.hpp"
#include "mseg/formulas.hpp"
#include "mseg/kl.hpp"
#include "mseg/poset.hpp"
#include "mseg/reduce.hpp"
#include "mseg/ring.hpp"
#include "mseg/sample.hpp"

using namespace mseg;
using json = nlohmann::ordered_json;

namespace {

constexpr int kCheckedDegree = 9;

struct Disagreement : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool g_json = false;

json envelope(const std::string& command) { return json{{"schema", "mseg/1"}, {"command", command}}; }

void emit(const json& j, const std::string& text) {
  if (g_json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

json decomposition_json(const Decomposition& d) {
  json out = json::array();
  for (const auto& [c, n] : d) out.push_back({{"multisegment", format_multisegment(c)}, {"coefficient", n}});
  return out;
}

std::string decomposition_text(const Decomposition& d, const char* symbol = "L") {
  if (d.empty()) return "0";
  std::string out;
  for (const auto& [c, n] : d) {
    if (!out.empty()) out += n < 0 ? " - " : " + ";
    else if (n < 0) out += "-";
    std::int64_t mag = n < 0 ? -n : n;
    if (mag != 1) out += std::to_string(mag) + "*";
    out += std::string(symbol) + "(" + format_multisegment(c) + ")";
  }
  return out;
}

// the smallest multisegment whose coefficients differ
std::optional<Multisegment> first_difference(const Decomposition& x, const Decomposition& y) {
  std::optional<Multisegment> best;
  auto consider = [&](const Decomposition& p, const Decomposition& q) {
    for (const auto& [c, n] : p) {
      auto it = q.find(c);
      if ((it == q.end() ? 0 : it->second) != n && (!best || c < *best)) best = c;
    }
  };
  consider(x, y);
  consider(y, x);
  return best;
}

std::int64_t coefficient(const Decomposition& d, const Multisegment& c) {
  auto it = d.find(c);
  return it == d.end() ? 0 : it->second;
}

enum class Mode { formula, oracle, both, automatic };

Mode pick_mode(bool formula, bool oracle, bool both) {
  if (formula + oracle + both > 1) throw CLI::ValidationError("choose one of --formula, --oracle, --both");
  if (formula) return Mode::formula;
  if (oracle) return Mode::oracle;
  if (both) return Mode::both;
  return Mode::automatic;
}

// runs the formula and, when asked or when the degree allows, the oracle beside it
void run_compared(const std::string& command, Mode mode, int degree,
                  const std::function<Decomposition()>& formula,
                  const std::function<Decomposition()>& oracle, const char* symbol) {
  if (mode == Mode::automatic) mode = degree <= kCheckedDegree ? Mode::both : Mode::formula;
  json j = envelope(command);
  std::string text;
  Decomposition result;
  if (mode == Mode::oracle) {
    result = oracle();
    j["route"] = "oracle";
  } else {
    result = formula();
    j["route"] = "formula";
    if (mode == Mode::both) {
      Decomposition check = oracle();
      j["checked"] = true;
      if (auto c = first_difference(result, check)) {
        std::ostringstream msg;
        msg << "formula and oracle disagree at " << format_multisegment(*c) << ": formula "
            << coefficient(result, *c) << ", oracle " << coefficient(check, *c);
        throw Disagreement(msg.str());
      }
    } else {
      j["checked"] = false;
      j["warning"] = "degree above " + std::to_string(kCheckedDegree) + ", not cross-checked";
      text += "warning: degree above " + std::to_string(kCheckedDegree) + ", not cross-checked\n";
    }
  }
  j["terms"] = decomposition_json(result);
  text += decomposition_text(result, symbol) + "\n";
  emit(j, text);
}

Route parse_route(const std::string& r) {
  if (r == "sym") return Route::sym;
  if (r == "deg") return Route::deg;
  throw CLI::ValidationError("--route must be sym, deg or both");
}

std::vector<int> parse_index_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw ParseError("expected integer in '" + s + "'", 0);
    }
  }
  return out;
}

json steps_json(const std::vector<TruncationStep>& steps) {
  json out = json::array();
  for (const auto& s : steps) out.push_back(format_step(s));
  return out;
}

std::string steps_text(const std::vector<TruncationStep>& steps) {
  std::string out;
  for (const auto& s : steps) out += (out.empty() ? "" : " ") + format_step(s);
  return out.empty() ? "-" : out;
}

std::string segments_text(const std::vector<Segment>& v) {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : ", ") + format_segment(s);
  return "{" + out + "}";
}

json segments_json(const std::vector<Segment>& v) {
  json out = json::array();
  for (const auto& s : v) out.push_back(format_segment(s));
  return out;
}

struct SelftestReport {
  int trials = 0;
  int mult_pairs = 0;
  int derivatives = 0;
  int products = 0;
  int unreduced = 0;
  std::vector<std::string> failures;
};

SelftestReport selftest(int max_deg, std::uint64_t seed, int trials) {
  Sampler sampler(seed);
  SelftestReport r;
  for (int t = 0; t < trials; ++t) {
    ++r.trials;
    Multisegment a = sampler.multisegment(max_deg);
    for (const auto& b : poset_elements(a)) {
      ++r.mult_pairs;
      std::int64_t s = multiplicity(b, a, Route::sym), d = multiplicity(b, a, Route::deg);
      if (s != d)
        r.failures.push_back("mult " + format_multisegment(b) + " in " + format_multisegment(a) +
                             ": sym " + std::to_string(s) + ", deg " + std::to_string(d));
    }
    auto w = a.weight();
    int k = sampler.uniform(w.begin()->first, w.rbegin()->first);
    Side side = sampler.uniform(0, 1) ? Side::left : Side::right;
    ++r.derivatives;
    Decomposition f = derivative_closed_form(a, k, side), o = derivative_simple(a, k, side);
    if (auto c = first_difference(f, o))
      r.failures.push_back(std::string("derive ") + (side == Side::left ? "left " : "") +
                           std::to_string(k) + " " + format_multisegment(a) + " at " +
                           format_multisegment(*c));
    Segment b = sampler.segment(std::max(1, std::min(3, max_deg + 1 - a.degree())));
    ++r.products;
    try {
      Decomposition pf = induce_segment(a, b), po = decompose_product(a, Multisegment{b});
      if (auto c = first_difference(pf, po))
        r.failures.push_back("product " + format_multisegment(a) + " x " + format_segment(b) +
                             " at " + format_multisegment(*c));
    } catch (const UnreducedCase&) {
      ++r.unreduced;
    }
  }
  return r;
}

int run(int argc, char** argv) {
  CLI::App app{"Multisegment posets, multiplicities, derivatives and induced products"};
  app.require_subcommand(1);
  app.add_flag("--json", g_json, "emit JSON (schema mseg/1)");

  std::string A, B, U, W, route_s = "deg", J_s;
  int K = 0, R0 = 0;
  bool dot = false, left = false, formula = false, oracle = false, both = false;
  int max_deg = 6, trials = 40;
  std::uint64_t seed = 1;

  auto* poset = app.add_subcommand("poset", "elements of S(a) by level, or the Hasse diagram");
  poset->add_option("A", A)->required();
  poset->add_flag("--dot", dot, "Graphviz output");

  auto* min = app.add_subcommand("min", "the minimal element of S(a)");
  min->add_option("A", A)->required();

  auto* leqc = app.add_subcommand("leq", "is b <= a");
  leqc->add_option("B", B)->required();
  leqc->add_option("A", A)->required();

  auto* mult = app.add_subcommand("mult", "m(b, a)");
  mult->add_option("B", B)->required();
  mult->add_option("A", A)->required();
  mult->add_option("--route", route_s, "sym, deg or both");

  auto* product = app.add_subcommand("product", "L_a x L_b in the L basis");
  product->add_option("A", A)->required();
  product->add_option("B", B)->required();

  auto* derive = app.add_subcommand("derive", "D^k(L_a), or ^kD(L_a) with --left");
  derive->add_option("K", K)->required();
  derive->add_option("A", A)->required();
  derive->add_flag("--left", left);

  for (auto* c : {product, derive}) {
    c->add_flag("--formula", formula, "closed form only");
    c->add_flag("--oracle", oracle, "ring oracle only");
    c->add_flag("--both", both, "closed form checked against the oracle");
  }

  auto* trunc = app.add_subcommand("truncate", "a^(k), or a^(k) from the left");
  trunc->add_option("K", K)->required();
  trunc->add_option("A", A)->required();
  trunc->add_flag("--left", left);

  auto* sym = app.add_subcommand("sym", "symmetrization certificate, optionally transporting b");
  sym->add_option("A", A)->required();
  sym->add_option("B", B);

  auto* classify = app.add_subcommand("classify", "the parabolic lift classifying S(a)");
  classify->add_option("A", A)->required();

  auto* kl = app.add_subcommand("kl", "P_{u,w}, or the parabolic P^J_{u,w}");
  kl->add_option("U", U)->required();
  kl->add_option("W", W)->required();
  kl->add_option("--J", J_s, "generators i,j,...");

  auto* wperm = app.add_subcommand("wperm", "Zelevinsky permutation of a");
  wperm->add_option("A", A)->required();

  auto* theta = app.add_subcommand("theta", "theta table of a parabolic model");
  theta->add_option("A", A)->required();
  theta->add_option("K", K)->required();
  theta->add_option("R0", R0)->required();

  auto* self = app.add_subcommand("selftest", "seeded cross-checks of every route");
  self->add_option("--max-deg", max_deg)->check(CLI::Range(1, 9));
  self->add_option("--seed", seed);
  self->add_option("--trials", trials)->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*poset) {
      PosetSnapshot p = generate_poset(parse_multisegment(A));
      if (dot) {
        std::cout << poset_dot(p);
        return 0;
      }
      json j = envelope("poset");
      j["root"] = format_multisegment(p.root);
      j["size"] = p.elements.size();
      j["covers"] = p.cover_edges.size();
      json els = json::array();
      std::string text;
      for (const auto& e : p.elements) {
        els.push_back({{"multisegment", format_multisegment(e)}, {"level", p.levels.at(e)}});
        text += std::to_string(p.levels.at(e)) + "\t" + format_multisegment(e) + "\n";
      }
      j["elements"] = els;
      emit(j, text);
    } else if (*min) {
      Multisegment m = minimal_element(parse_multisegment(A));
      json j = envelope("min");
      j["minimum"] = format_multisegment(m);
      emit(j, format_multisegment(m) + "\n");
    } else if (*leqc) {
      bool r = leq(parse_multisegment(B), parse_multisegment(A));
      json j = envelope("leq");
      j["leq"] = r;
      emit(j, r ? "true\n" : "false\n");
    } else if (*mult) {
      Multisegment b = parse_multisegment(B), a = parse_multisegment(A);
      json j = envelope("mult");
      if (route_s == "both") {
        std::int64_t s = multiplicity(b, a, Route::sym), d = multiplicity(b, a, Route::deg);
        if (s != d)
          throw Disagreement("routes disagree: sym " + std::to_string(s) + ", deg " + std::to_string(d));
        j["route"] = "both";
        j["multiplicity"] = s;
        emit(j, std::to_string(s) + "\n");
      } else {
        std::int64_t m = multiplicity(b, a, parse_route(route_s));
        j["route"] = route_s;
        j["multiplicity"] = m;
        emit(j, std::to_string(m) + "\n");
      }
    } else if (*product) {
      Multisegment a = parse_multisegment(A), b = parse_multisegment(B);
      Mode mode = pick_mode(formula, oracle, both);
      auto segs = b.segments();
      if (segs.size() != 1 && mode != Mode::oracle) {
        if (mode != Mode::automatic)
          throw CLI::ValidationError("the closed form needs b to be a single segment");
        mode = Mode::oracle;
      }
      run_compared(
          "product", mode, a.degree() + b.degree(),
          [&] { return induce_segment(a, segs.front()); },
          [&] { return decompose_product(a, b); }, "L");
    } else if (*derive) {
      Multisegment a = parse_multisegment(A);
      Side side = left ? Side::left : Side::right;
      run_compared(
          "derive", pick_mode(formula, oracle, both), a.degree(),
          [&] { return derivative_closed_form(a, K, side); },
          [&] { return derivative_simple(a, K, side); }, "L");
    } else if (*trunc) {
      Multisegment t = truncate(parse_multisegment(A), K, left ? Side::left : Side::right);
      json j = envelope("truncate");
      j["result"] = format_multisegment(t);
      emit(j, format_multisegment(t) + "\n");
    } else if (*sym) {
      Multisegment a = parse_multisegment(A);
      SymmetrizationCertificate c = symmetrize(a);
      json j = envelope("sym");
      j["source"] = format_multisegment(c.source);
      j["sym"] = format_multisegment(c.sym);
      j["c1"] = segments_json(c.c1);
      j["c2"] = segments_json(c.c2);
      j["c3"] = segments_json(c.c3);
      j["replay"] = steps_json(c.replay);
      j["model"] = format_multisegment(c.a_id);
      j["w"] = c.w.str();
      std::string text = "sym      " + format_multisegment(c.sym) + "\n" +
                         "c1       " + segments_text(c.c1) + "\n" +
                         "c2       " + segments_text(c.c2) + "\n" +
                         "c3       " + segments_text(c.c3) + "\n" +
                         "replay   " + steps_text(c.replay) + "\n" +
                         "model    " + format_multisegment(c.a_id) + "\n" +
                         "w        " + c.w.str() + "\n";
      if (!B.empty()) {
        Multisegment t = transport(parse_multisegment(B), c);
        j["transport"] = format_multisegment(t);
        text += "transport " + format_multisegment(t) + "\n";
      }
      emit(j, text);
    } else if (*classify) {
      Classification c = classify_poset(parse_multisegment(A));
      json j = envelope("classify");
      j["n"] = c.n;
      j["J1"] = c.J1.str();
      j["J2"] = c.J2.str();
      j["lifted"] = format_multisegment(c.lifted);
      j["model"] = format_multisegment(c.model);
      j["w"] = c.w.str();
      j["floor"] = format_multisegment(c.floor);
      j["replay"] = steps_json(c.replay);
      emit(j, "n        " + std::to_string(c.n) + "\nJ1       " + c.J1.str() + "\nJ2       " +
                  c.J2.str() + "\nlifted   " + format_multisegment(c.lifted) + "\nmodel    " +
                  format_multisegment(c.model) + "\nw        " + c.w.str() + "\nfloor    " +
                  format_multisegment(c.floor) + "\nreplay   " + steps_text(c.replay) + "\n");
    } else if (*kl) {
      Perm u = parse_perm(U), w = parse_perm(W);
      if (u.n() != w.n()) throw SizeMismatch("U and W have different sizes");
      QPoly p = J_s.empty() ? kl_poly(u, w) : parabolic_kl(u, w, GeneratorSet(u.n(), parse_index_list(J_s)));
      json j = envelope("kl");
      j["P"] = p.str();
      json coeffs = json::array();
      if (!p.is_zero())
        for (int e = p.low_v(); e <= p.high_v(); e += 2) coeffs.push_back(p.coeff_v(e));
      j["q_coefficients"] = coeffs;
      emit(j, p.str() + "\n");
    } else if (*wperm) {
      Multisegment a = parse_multisegment(A);
      Perm w = zelevinsky_permutation(a);
      json j = envelope("wperm");
      j["w"] = w.str();
      j["length"] = length(w);
      emit(j, w.str() + "\n");
    } else if (*theta) {
      ThetaTable t = theta_table(parse_multisegment(A), K, R0);
      json j = envelope("theta");
      j["model"] = format_multisegment(t.model);
      j["k"] = t.k;
      j["r0"] = t.r0;
      j["J"] = t.J.str();
      j["J1"] = t.J1.str();
      j["J2"] = t.J2.str();
      json ts = json::array();
      for (const auto& [v, tv] : t.t) ts.push_back({{"v", v.str()}, {"t", tv.str()}});
      j["t"] = ts;
      json es = json::array();
      for (const auto& [key, p] : t.entries)
        es.push_back({{"u", key.first.str()}, {"t", key.second.str()}, {"theta", p.str()},
                      {"at_one", p.at_one()}});
      j["entries"] = es;
      std::cout << j.dump(2) << "\n";
    } else if (*self) {
      auto t0 = std::chrono::steady_clock::now();
      SelftestReport r = selftest(max_deg, seed, trials);
      double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      json j = envelope("selftest");
      j["seed"] = seed;
      j["max_deg"] = max_deg;
      j["trials"] = r.trials;
      j["mult_pairs"] = r.mult_pairs;
      j["derivatives"] = r.derivatives;
      j["products"] = r.products;
      j["unreduced"] = r.unreduced;
      j["failures"] = r.failures;
      std::ostringstream text;
      text << "trials " << r.trials << ", mult pairs " << r.mult_pairs << ", derivatives "
           << r.derivatives << ", products " << r.products << ", unreduced " << r.unreduced
           << ", failures " << r.failures.size() << "\n";
      for (const auto& f : r.failures) text << "FAIL " << f << "\n";
      if (!g_json) text << "time " << secs << " s\n";
      emit(j, text.str());
      return r.failures.empty() && r.unreduced == 0 ? 0 : 1;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const Disagreement& e) {
    std::cerr << "disagreement: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
