// credal: command-line front end for .cset files.
//
// Exit status: 0 computed (whatever the verdict), 1 inconsistent or invalid
// model, 2 usage or parse error.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "credal/cset.hpp"
#include "credal/fusion.hpp"
#include "credal/fusion_check.hpp"
#include "credal/harness.hpp"
#include "credal/independence.hpp"

using namespace credal;

namespace {

constexpr int kExitInvalid = 1;
constexpr int kExitUsage = 2;

// Raised for a computed outcome that must end with status 1.
struct Inconsistent {
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

VarList split_vars(const std::string& s) {
  VarList out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::string values(const std::vector<Rational>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : " ") + x.str();
  return s;
}

std::string assignment(const Space& s, std::size_t cell) {
  const auto a = s.assignment(cell);
  std::string out;
  for (std::size_t i = 0; i < a.size(); ++i)
    out += (i ? "," : "") + s.variables()[i].name + "=" + std::to_string(a[i]);
  return out;
}

// `groups` is X∪Y∪Z; point witnesses index cells of that subspace.
std::string describe_witness(const Witness& w, const VarList& groups, const VarList& given, const Space& model) {
  return std::visit(
      [&](const auto& x) -> std::string {
        using W = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<W, std::monostate>) {
          return "-";
        } else if constexpr (std::is_same_v<W, PointWitness>) {
          return "point " + values(x.point.values()) + " at " + assignment(x.point.space().subspace(groups), x.cell);
        } else if constexpr (std::is_same_v<W, HullWitness>) {
          return "point " + values(x.point.values()) + (x.in_joint ? " in joint, outside the factorized set"
                                                                    : " in the factorized set, outside joint");
        } else if constexpr (std::is_same_v<W, LikelihoodWitness>) {
          std::string s = "likelihood " + describe(x.likelihood);
          if (x.slice) s += " given " + assignment(model.subspace(given), *x.slice);
          return s;
        } else {
          return "marginal point " + values(x.marginal_point.values()) + " value " + std::to_string(x.value);
        }
      },
      w);
}

void print_verdict(std::ostream& os, const Verdict& v, const VarList& groups, const VarList& given,
                   const Space& model) {
  os << "verdict: " << to_string(v.status) << '\n';
  os << "method: " << to_string(v.method) << '\n';
  os << "witness: " << describe_witness(v.witness, groups, given, model) << '\n';
  os << "attempts: " << v.attempts << '\n';
  if (!v.detail.empty()) os << "detail: " << v.detail << '\n';
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("CREDAL_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw InputError("CREDAL_SEED is not an unsigned integer");
    }
  }
  return 0;
}

struct Options {
  std::string file, second_file;
  bool raw = false;
  int type = 0;
  std::string of, wrt, given, onto, shared, rule = "mc", likelihood, likelihood_file;
  std::size_t samples = 1000;
  std::size_t couplings = 0;
  std::size_t count = 20;
  std::uint64_t seed = 0;
};

FuncSet load_set(const std::string& path, bool raw) {
  const std::string text = read_file(path);
  return raw ? parse_cset(text) : FuncSet(parse_credal(text).carrier());
}

CredalSet load_credal(const std::string& path) { return parse_credal(read_file(path)); }

LikelihoodFamily family_from(const Options& o, const Space& model) {
  LikelihoodFamily f;
  f.random_count = o.samples;
  f.seed = o.seed;
  if (!o.likelihood_file.empty()) {
    std::stringstream ss(read_file(o.likelihood_file));
    std::string line;
    while (std::getline(ss, line)) {
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      const auto tokens = detail::split_ws(line);
      for (const auto& t : tokens) f.user_supplied.push_back(parse_likelihood(t, model));
    }
  }
  return f;
}

int cmd_check(const Options& o) {
  const VarList of = split_vars(o.of), wrt = split_vars(o.wrt), given = split_vars(o.given);
  std::ostream& os = std::cout;
  Verdict v;
  if (o.type == 1) {
    const FuncSet h = load_set(o.file, false);
    std::vector<Func> points;
    for (std::size_t i = 0; i < h.size(); ++i) points.push_back(h.vertex(i));
    v = type1(points, of, wrt, given);
    os << "notion: type-1\n";
    os << "of: " << join_names(of) << "\nwrt: " << join_names(wrt) << "\ngiven: " << (given.empty() ? "-" : join_names(given)) << '\n';
    print_verdict(os, v, join(join(of, wrt), given), given, h.space());
    return 0;
  }
  const CredalSet h = load_credal(o.file);
  switch (o.type) {
    case 2: v = type2(h, of, wrt, given); break;
    case 3: v = given.empty() ? type3(h, of, wrt) : type3_conditional(h, of, wrt, given); break;
    case 4: v = type4(h, of, wrt, given, family_from(o, h.space())); break;
    case 5: v = type5(h, of, wrt, given, family_from(o, h.space())); break;
    default: throw InputError("--type must be 1..5");
  }
  os << "notion: type-" << o.type << '\n';
  os << "of: " << join_names(of) << "\nwrt: " << join_names(wrt) << "\ngiven: " << (given.empty() ? "-" : join_names(given)) << '\n';
  print_verdict(os, v, join(join(of, wrt), given), given, h.space());
  return 0;
}

int cmd_marginalize(const Options& o) {
  const FuncSet h = load_set(o.file, o.raw);
  std::cout << render_cset(marginalize(h, split_vars(o.onto)));
  return 0;
}

int cmd_condition(const Options& o) {
  if (o.rule == "mc") {
    const FuncSet h = load_set(o.file, o.raw);
    FuncSet r = condition_mc(h, parse_likelihood(o.likelihood, h.space()));
    if (!o.onto.empty()) r = marginalize(r, split_vars(o.onto));
    std::cout << render_cset(canonicalize(r));
    return 0;
  }
  if (o.rule != "dempster") throw InputError("--rule must be mc or dempster");
  const CredalSet h = load_credal(o.file);
  auto r = condition_dempster(h, parse_likelihood(o.likelihood, h.space()));
  if (!r) {
    std::cout << "EMPTY\n";
    return 0;
  }
  std::cout << render_cset(o.onto.empty() ? r->carrier() : marginalize(r->carrier(), split_vars(o.onto)));
  return 0;
}

int cmd_combine(const Options& o) {
  std::cout << render_cset(combine(load_set(o.file, o.raw), load_set(o.second_file, o.raw)));
  return 0;
}

int cmd_conditional(const Options& o) {
  std::cout << render_cset(conditional_set(load_credal(o.file), split_vars(o.given)).carrier());
  return 0;
}

int cmd_cause(const Options& o) {
  const CredalSet h = load_credal(o.file);
  const VarList cause = split_vars(o.of);
  std::cout << "cause: " << join_names(cause) << '\n';
  std::cout << "verdict: " << (is_cause(h, cause) ? "HOLDS" : "FAILS") << '\n';
  return 0;
}

int cmd_fuse(const Options& o) {
  FuseOptions opts;
  opts.coupling_count = o.couplings;
  opts.seed = o.seed;
  auto r = fuse(load_credal(o.file), load_credal(o.second_file), split_vars(o.shared), opts);
  if (!r) throw Inconsistent{"INCONSISTENT"};
  const auto props = fusion_properties(*r);
  std::cout << "# method: " << to_string(r->method) << '\n';
  std::cout << "# exact: " << (r->exact ? "true" : "false") << '\n';
  std::cout << "# couplings: " << r->coupling_count << '\n';
  std::cout << "# marginals: " << (props.marginals_equal ? "equal" : props.marginals_inside ? "inside" : "violated") << '\n';
  std::cout << "# factorizing vertices: " << (props.vertices_factorize ? "all" : "not all") << '\n';
  std::cout << render_cset(r->joint.carrier());
  return 0;
}

int cmd_table(const Options& o) {
  const CredalSet h = load_credal(o.file);
  const VarList x = split_vars(o.of), y = split_vars(o.wrt), z = split_vars(o.given);
  const auto t = implication_table(h, x, y, z, family_from(o, h.space()));
  auto row = [&](const char* name, const Verdict& v) {
    std::cout << name << ": " << to_string(v.status) << " (" << to_string(v.method) << ")";
    if (v.fails()) std::cout << " witness " << describe_witness(v.witness, join(join(x, y), z), z, h.space());
    std::cout << '\n';
  };
  row("type-1", t.i1);
  row("type-2", t.i2);
  row("type-3", t.i3);
  row("type-4 of X wrt Y", t.i4_xy);
  row("type-4 of Y wrt X", t.i4_yx);
  row("type-5 of X wrt Y", t.i5_xy);
  row("type-5 of Y wrt X", t.i5_yx);
  std::cout << "cause: " << (t.cause.applies ? t.cause.pattern : "-") << '\n';
  std::cout << "consistency: " << (t.consistent() ? "ok" : "VIOLATED") << '\n';
  for (const auto& v : t.violations) std::cout << "violation: " << v << '\n';
  return t.consistent() ? 0 : kExitInvalid;
}

int cmd_canon(const Options& o) {
  std::cout << render_cset(canonicalize(load_set(o.file, o.raw)));
  return 0;
}

// Implication-table report over the built-in examples and generated instances.
int cmd_report(const Options& o) {
  LikelihoodFamily family;
  family.random_count = o.samples;
  family.seed = o.seed;
  bool ok = true;
  auto run = [&](const std::string& name, const CredalSet& h, const VarList& z) {
    const auto t = implication_table(h, {"X"}, {"Y"}, z, family);
    ok = ok && t.consistent();
    std::cout << report_line(name, t) << '\n';
  };
  for (const char* id : {"ex3-1", "ex3-2", "ex3-3"}) run(id, paper_example(id), {});
  run("ex4", paper_example("ex4"), {"Z"});
  const std::vector<std::vector<std::size_t>> shapes{{2, 2}, {2, 3}, {3, 3}, {2, 2, 2}, {3, 2, 2}, {3, 3, 2}};
  const InstanceKind kinds[] = {InstanceKind::Random,       InstanceKind::ProductBuilt, InstanceKind::CausalChainA,
                                InstanceKind::CausalChainB, InstanceKind::CausalChainC, InstanceKind::Perturbed};
  for (std::size_t i = 0; i < o.count; ++i) {
    InstanceRecipe r;
    r.kind = kinds[i % std::size(kinds)];
    r.shape = shapes[(i / std::size(kinds)) % shapes.size()];
    r.vertices = 2 + (i % 5);
    r.seed = o.seed * 1000003 + i;
    run(r.describe(), generate(r), r.shape.size() == 3 ? VarList{"Z"} : VarList{});
  }
  return ok ? 0 : kExitInvalid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with credal sets stored as .cset files"};
  app.require_subcommand(1);
  Options o;
  o.seed = 0;
  try {
    o.seed = default_seed();
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  auto file_arg = [&](CLI::App* c) { c->add_option("file", o.file, ".cset input")->required(); };
  auto seed_opt = [&](CLI::App* c) { c->add_option("--seed", o.seed, "random seed (default: $CREDAL_SEED or 0)"); };
  auto raw_flag = [&](CLI::App* c) { c->add_flag("--raw", o.raw, "accept unnormalized vertices"); };

  auto* check = app.add_subcommand("check", "decide an independence notion");
  file_arg(check);
  check->add_option("--type", o.type, "1..5")->required()->check(CLI::Range(1, 5));
  check->add_option("--of", o.of, "first variable group (comma separated)")->required();
  check->add_option("--wrt", o.wrt, "second variable group")->required();
  check->add_option("--given", o.given, "conditioning variables");
  check->add_option("--samples", o.samples, "random likelihoods in the sweep");
  check->add_option("--likelihood-file", o.likelihood_file, "extra likelihood literals, one or more per line");
  seed_opt(check);

  auto* marg = app.add_subcommand("marginalize", "marginal set");
  file_arg(marg);
  marg->add_option("--onto", o.onto, "kept variables")->required();
  raw_flag(marg);

  auto* cond = app.add_subcommand("condition", "condition on a likelihood");
  file_arg(cond);
  cond->add_option("--rule", o.rule, "mc or dempster")->check(CLI::IsMember({"mc", "dempster"}));
  cond->add_option("--likelihood", o.likelihood, "VAR:v1,v2,...")->required();
  cond->add_option("--onto", o.onto, "marginalize the result");
  raw_flag(cond);

  auto* comb = app.add_subcommand("combine", "combination of two sets");
  file_arg(comb);
  comb->add_option("second", o.second_file, "second .cset input")->required();
  raw_flag(comb);

  auto* condset = app.add_subcommand("conditional", "conditional set");
  file_arg(condset);
  condset->add_option("--given", o.given, "conditioning variables")->required();

  auto* cause = app.add_subcommand("cause", "cause test");
  file_arg(cause);
  cause->add_option("--of", o.of, "candidate cause variables")->required();

  auto* fu = app.add_subcommand("fuse", "joint from two overlapping sets");
  file_arg(fu);
  fu->add_option("second", o.second_file, "second .cset input")->required();
  fu->add_option("--shared", o.shared, "shared variables")->required();
  fu->add_option("--couplings", o.couplings, "interior coupling samples");
  seed_opt(fu);

  auto* table = app.add_subcommand("table", "all notions and their implications");
  file_arg(table);
  table->add_option("--of", o.of, "first variable group")->required();
  table->add_option("--wrt", o.wrt, "second variable group")->required();
  table->add_option("--given", o.given, "conditioning variables");
  table->add_option("--samples", o.samples, "random likelihoods in the sweep");
  table->add_option("--likelihood-file", o.likelihood_file, "extra likelihood literals");
  seed_opt(table);

  auto* canon = app.add_subcommand("canon", "canonical form");
  file_arg(canon);
  raw_flag(canon);

  auto* report = app.add_subcommand("report", "implication-table report over generated instances");
  report->add_option("--count", o.count, "generated instances");
  report->add_option("--samples", o.samples, "random likelihoods per sweep");
  seed_opt(report);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*check) return cmd_check(o);
    if (*marg) return cmd_marginalize(o);
    if (*cond) return cmd_condition(o);
    if (*comb) return cmd_combine(o);
    if (*condset) return cmd_conditional(o);
    if (*cause) return cmd_cause(o);
    if (*fu) return cmd_fuse(o);
    if (*table) return cmd_table(o);
    if (*canon) return cmd_canon(o);
    if (*report) return cmd_report(o);
  } catch (const Inconsistent& e) {
    std::cout << e.message << '\n';
    return kExitInvalid;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ValidationError& e) {
    std::cerr << "invalid model: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
