// nilblock: decide blockability, enumerate midpoint classes, build torus
// blocking sets, and take SL(2) square roots, all in exact arithmetic.
//
// Exit codes: 0 ok, 1 selftest failure, 2 malformed input or usage,
// 3 field rejected, 4 domain or limit error.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "nilblock/blockability.hpp"
#include "nilblock/json_io.hpp"
#include "nilblock/selftest.hpp"
#include "nilblock/sl2.hpp"
#include "nilblock/torus.hpp"

namespace {

using nilblock::io::json;
namespace nb = nilblock;

struct Session {
  std::string field_path;  // empty or "rational" for Q
  std::string lattice_path;
  std::string input = "-";
  std::string out_path;
  std::string format = "json";
  int window = 0;  // 0: per-command default
  int verify_k = 50;
  unsigned threads = 1;
  bool with_classes = false;
  nb::SelftestConfig selftest;
};

std::string slurp(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path);
  if (!in) throw nb::InputError("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

json read_json(const std::string& path) {
  try {
    return json::parse(slurp(path));
  } catch (const json::parse_error& e) {
    throw nb::InputError("malformed JSON in '" + path + "': " + e.what());
  }
}

nb::FieldPtr load_field(const Session& s) {
  if (s.field_path.empty() || s.field_path == "rational") return nb::NumberField::rationals();
  return nb::io::field_from_json(read_json(s.field_path));
}

nb::LatticeSpec load_lattice(const Session& s, std::size_t n) {
  if (s.lattice_path.empty()) return nb::LatticeSpec::standard(n);
  auto l = nb::io::lattice_from_json(read_json(s.lattice_path));
  if (l.n() != n) throw nb::InputError("lattice dimension does not match the points");
  return l;
}

// Pair input: {"g1": point, "g2": point}.
nb::PointPair<nb::FieldElement> load_pair(const Session& s) {
  const auto field = load_field(s);
  const json j = read_json(s.input);
  const auto g1 = nb::io::point_from_json(nb::io::require(j, "g1"), field);
  const auto g2 = nb::io::point_from_json(nb::io::require(j, "g2"), field);
  if (g1.n() != g2.n()) throw nb::InputError("g1 and g2 have different dimensions");
  return nb::make_point_pair(load_lattice(s, g1.n()), g1, g2);
}

void emit(const Session& s, const std::string& text) {
  if (s.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(s.out_path, std::ios::binary);
  if (!out) throw nb::InputError("cannot write '" + s.out_path + "'");
  out << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

int cmd_decide(const Session& s) {
  const auto pair = load_pair(s);
  emit(s, dump(nb::io::verdict_to_json(nb::decide_pair(pair))));
  return 0;
}

int cmd_midpoints(const Session& s) {
  const auto pair = load_pair(s);
  const std::size_t n = pair.lattice.n();
  const int window = s.window ? s.window : (n == 1 ? 16 : 6);
  const auto base = nb::basepoint(pair.m1.c, pair.lattice);
  const nb::PointPair<nb::FieldElement> normalized{pair.lattice, base, nb::normalize_to_basepoint(pair)};
  const auto report = nb::enumerate_midpoints(normalized, window, {}, s.threads);
  if (s.format == "csv") {
    emit(s, nb::io::midpoint_csv(report));
  } else {
    emit(s, dump(nb::io::midpoint_to_json(report, s.with_classes)));
  }
  return 0;
}

int cmd_torus(const Session& s) {
  const json j = read_json(s.input);
  const json& nj = nb::io::require(j, "n");
  if (!nj.is_number_integer() || nj.get<long>() < 1) throw nb::InputError("'n' must be a positive integer");
  const auto n = nj.get<std::size_t>();
  const auto p = nb::io::torus_point_from_json(nb::io::require(j, "p"), n);
  const auto q = nb::io::torus_point_from_json(nb::io::require(j, "q"), n);
  const auto set = nb::torus_block_set(p, q);
  json out;
  json pts = json::array();
  for (const auto& t : set.points) pts.push_back(nb::io::torus_point_to_json(t));
  out["block_set"] = pts;
  out["degenerate"] = set.degenerate;
  if (set.degenerate) {
    json qp = json::array();
    for (const auto& t : set.quarter_points) qp.push_back(nb::io::torus_point_to_json(t));
    out["quarter_points"] = qp;
    out["verified"] = nullptr;
  } else {
    out["verified"] = nb::torus_verify(p, q, set.points, s.verify_k);
  }
  out["K"] = s.verify_k;
  emit(s, dump(out));
  return 0;
}

int cmd_sl2_sqrt(const Session& s) {
  emit(s, dump(nb::io::sqrt_to_json(nb::sl2_sqrt(nb::io::mat2_from_json(read_json(s.input))))));
  return 0;
}

int cmd_sl2_spread(const Session& s) {
  const nb::Mat2Q g = s.input.empty() ? nb::Mat2Q::identity() : nb::io::mat2_from_json(read_json(s.input));
  const auto series = nb::coset_spread_series(g, s.window ? s.window : 10);
  emit(s, s.format == "csv" ? nb::io::spread_csv(series) : dump(nb::io::spread_to_json(series)));
  return 0;
}

int cmd_selftest(const Session& s) {
  const auto report = nb::run_selftest(s.selftest);
  if (s.format == "json") {
    json suites = json::array();
    for (const auto& r : report.suites)
      suites.push_back({{"name", r.name}, {"cases", r.cases}, {"passed", r.passed()}, {"failures", r.failures}});
    emit(s, dump({{"seed", s.selftest.seed},
                  {"cases", s.selftest.cases},
                  {"tolerance", s.selftest.tolerance},
                  {"suites", suites},
                  {"passed", report.passed()}}));
  } else {
    emit(s, report.text());
  }
  return report.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact blockability decisions and enumeration reports for Heisenberg nilmanifolds"};
  app.require_subcommand(1);
  Session s;

  auto add_common = [&](CLI::App* c, bool field) {
    if (field) {
      c->add_option("--field", s.field_path, "number field JSON, or 'rational' (default)");
      c->add_option("--lattice", s.lattice_path, "lattice JSON {\"n\", \"delta\"}; default standard");
    }
    c->add_option("--out", s.out_path, "write the report here instead of stdout");
  };
  auto add_input = [&](CLI::App* c, bool required) {
    auto* o = c->add_option("input", s.input, "input JSON file, '-' for stdin");
    if (required) o->required();
  };
  auto* decide = app.add_subcommand("decide", "decide blockability of {\"g1\", \"g2\"}");
  add_common(decide, true);
  add_input(decide, true);

  auto* mid = app.add_subcommand("midpoints", "midpoint class counts per window radius");
  add_common(mid, true);
  add_input(mid, true);
  mid->add_option("--window", s.window, "window radius N (default 16 for n=1, 6 for n=2)")
      ->check(CLI::PositiveNumber);
  mid->add_option("--format", s.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  mid->add_option("--threads", s.threads, "enumeration workers")->check(CLI::Range(1u, 256u));
  mid->add_flag("--classes", s.with_classes, "include the classes of the full window (json)");

  auto* torus = app.add_subcommand("torus", "midpoint blocking set on R^n/Z^n for {\"n\", \"p\", \"q\"}");
  add_common(torus, false);
  add_input(torus, true);
  torus->add_option("--verify-k", s.verify_k, "verification radius K")->check(CLI::PositiveNumber);

  auto* sl2 = app.add_subcommand("sl2", "SL(2) square roots and coset spread");
  sl2->require_subcommand(1);
  auto* sq = sl2->add_subcommand("sqrt", "square roots of {\"matrix\": [[a, b], [c, d]]}");
  add_common(sq, false);
  add_input(sq, true);
  auto* spread = sl2->add_subcommand("spread", "radical count of roots of g * SL(2, Z) per window");
  add_common(spread, false);
  s.input.clear();
  spread->add_option("input", s.input, "matrix JSON (default identity)");
  spread->add_option("--window", s.window, "window N (default 10)")->check(CLI::PositiveNumber);
  spread->add_option("--format", s.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  auto* self = app.add_subcommand("selftest", "seeded invariant suites");
  add_common(self, false);
  self->add_option("--seed", s.selftest.seed, "random seed");
  self->add_option("--cases", s.selftest.cases, "cases per suite")->check(CLI::PositiveNumber);
  self->add_option("--tolerance", s.selftest.tolerance, "floating cross-check tolerance");
  self->add_option("--format", s.format, "text or json")->check(CLI::IsMember({"text", "json"}));

  // Defaults that differ per command are fixed after parsing.
  s.format.clear();
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  if (s.input.empty() && !spread->parsed()) s.input = "-";
  if (s.format.empty()) {
    if (mid->parsed() || spread->parsed()) s.format = "csv";
    else if (self->parsed()) s.format = "text";
    else s.format = "json";
  }

  try {
    if (decide->parsed()) return cmd_decide(s);
    if (mid->parsed()) return cmd_midpoints(s);
    if (torus->parsed()) return cmd_torus(s);
    if (sq->parsed()) return cmd_sl2_sqrt(s);
    if (spread->parsed()) return cmd_sl2_spread(s);
    if (self->parsed()) return cmd_selftest(s);
  } catch (const nb::FieldError& e) {
    std::cerr << "field rejected: " << e.what() << '\n';
    return 3;
  } catch (const nb::InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  } catch (const nb::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  }
  return 2;
}
