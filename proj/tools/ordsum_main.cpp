#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "ordsum/notation.hpp"
#include "ordsum/realize.hpp"
#include "ordsum/rng.hpp"
#include "ordsum/sums.hpp"
#include "ordsum/verify.hpp"

namespace {

using namespace ordsum;

constexpr int kExitOk = 0;
constexpr int kExitPropertyFailure = 1;
constexpr int kExitParseError = 2;
constexpr int kExitDomainError = 3;

// expression grammar for eval:
//   expr := atom (op atom)*        ops at equal precedence, left associative
//   op   := "+" | "(+)" | "(x)"    classical sum, natural sum, natural product
//   atom := "(" expr ")" | term    term as in the ordinal grammar
class ExprParser {
 public:
  explicit ExprParser(std::string_view s) : s_(s) {}

  Ordinal parse() {
    Ordinal v = parse_expr();
    skip_ws();
    if (i_ < s_.size()) throw ParseError("trailing input", i_);
    return v;
  }

 private:
  void skip_ws() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  bool lookahead_op_paren(char* which) {
    std::size_t j = i_ + 1;
    auto ws = [&] { while (j < s_.size() && std::isspace(static_cast<unsigned char>(s_[j]))) ++j; };
    ws();
    if (j >= s_.size() || (s_[j] != '+' && s_[j] != 'x')) return false;
    char op = s_[j++];
    ws();
    if (j >= s_.size() || s_[j] != ')') return false;
    *which = op;
    i_ = j + 1;
    return true;
  }

  Ordinal parse_expr() {
    Ordinal v = parse_atom();
    for (;;) {
      skip_ws();
      if (i_ >= s_.size()) break;
      if (s_[i_] == '+') {
        ++i_;
        v = classical_add(v, parse_atom());
      } else if (s_[i_] == '(') {
        char which = 0;
        std::size_t save = i_;
        if (!lookahead_op_paren(&which)) {
          i_ = save;
          break;
        }
        Ordinal rhs = parse_atom();
        v = which == '+' ? natural_sum(v, rhs) : natural_product(v, rhs);
      } else {
        break;
      }
    }
    return v;
  }

  Ordinal parse_atom() {
    skip_ws();
    if (i_ >= s_.size()) throw ParseError("expected an ordinal", i_);
    if (s_[i_] == '(') {
      char which = 0;
      std::size_t save = i_;
      if (lookahead_op_paren(&which)) throw ParseError("operator without left operand", save);
      ++i_;
      Ordinal v = parse_expr();
      skip_ws();
      if (i_ >= s_.size() || s_[i_] != ')') throw ParseError("expected ')'", i_);
      ++i_;
      return v;
    }
    return parse_term();
  }

  Ordinal parse_term() {
    skip_ws();
    if (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) return Ordinal(parse_nat());
    if (i_ >= s_.size() || s_[i_] != 'w') throw ParseError("expected 'w' or a number", i_);
    ++i_;
    Ordinal expo(std::uint64_t{1});
    skip_ws();
    if (i_ < s_.size() && s_[i_] == '^') {
      ++i_;
      skip_ws();
      if (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
        expo = Ordinal(parse_nat());
      } else if (i_ < s_.size() && s_[i_] == 'w') {
        ++i_;
        skip_ws();
        if (i_ < s_.size() && s_[i_] == '^')
          throw ParseError("nested exponent needs parentheses", i_);
        expo = Ordinal::omega();
      } else if (i_ < s_.size() && s_[i_] == '(') {
        ++i_;
        expo = parse_expr();
        skip_ws();
        if (i_ >= s_.size() || s_[i_] != ')') throw ParseError("expected ')'", i_);
        ++i_;
      } else {
        throw ParseError("expected exponent", i_);
      }
    }
    Nat coeff = 1;
    skip_ws();
    if (i_ < s_.size() && s_[i_] == '*') {
      ++i_;
      skip_ws();
      if (i_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[i_])))
        throw ParseError("expected coefficient", i_);
      coeff = parse_nat();
    }
    return Ordinal::omega_pow(expo, coeff);
  }

  Nat parse_nat() {
    Nat n = 0;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_])))
      n = n * 10 + (s_[i_++] - '0');
    return n;
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

struct Output {
  bool machine = false;

  void kv(const std::string& key, const std::string& value) const {
    if (machine)
      std::cout << key << "\t" << value << "\n";
    else
      std::cout << key << " " << value << "\n";
  }
  void line(const std::string& text) const { std::cout << text << "\n"; }
};

std::string interval(const Ordinal& lo, const Ordinal& hi) {
  return "[" + print_ordinal(lo) + ", " + print_ordinal(hi) + ")";
}

void dump_plan(const BlockPlan& plan, const Output& out) {
  out.kv("total", print_ordinal(plan.claimed_total()));
  out.kv("segments", std::to_string(plan.segments().size()));
  for (std::size_t k = 0; k < plan.segments().size(); ++k) {
    std::ostringstream os;
    os << "segment " << k << " target " << print_ordinal(plan.segment_start(k)) << " ";
    if (const auto* single = std::get_if<SingleSegment>(&plan.segments()[k])) {
      os << "single source " << single->block.source << " src "
         << interval(single->block.src_lo, single->block.src_hi);
      out.line(os.str());
      continue;
    }
    const auto& fam = std::get<FamilySegment>(plan.segments()[k]);
    const char* kind = nullptr;
    switch (fam.kind) {
      case FamilyKind::equal_blocks: kind = "equal"; break;
      case FamilyKind::increasing_blocks: kind = "increasing"; break;
      case FamilyKind::graded_chains: kind = "graded"; break;
      case FamilyKind::stacked_chains: kind = "stacked"; break;
    }
    os << "family " << kind << " chunk " << interval(fam.chunk_lo, fam.chunk_hi)
       << " first-slot " << fam.first_slot << " total " << print_ordinal(fam.total);
    if (!fam.slice.is_zero()) os << " slice " << print_ordinal(fam.slice);
    out.line(os.str());
    for (const auto& b : fam.head) {
      std::ostringstream hs;
      hs << "  head source " << b.source << " src " << interval(b.src_lo, b.src_hi);
      out.line(hs.str());
    }
    for (const auto& [src, d] : fam.graded_prefix) {
      std::ostringstream hs;
      hs << "  chunk source " << src << " len " << print_ordinal(d);
      out.line(hs.str());
    }
  }
}

int run_eval(const std::string& expr, const Output& out) {
  Ordinal v = ExprParser(expr).parse();
  out.kv("result", print_ordinal(v));
  return kExitOk;
}

int run_infsum(const std::string& seq_text, const std::string& op, bool explain,
               const Output& out) {
  OmegaSequence s = parse_sequence(seq_text);
  if (explain) {
    SumDecomposition d = decompose(s);
    out.kv("zeta", print_ordinal(d.zeta));
    out.kv("epsilon", print_ordinal(d.epsilon));
    out.kv("clause", d.clause == SumClause::s1 ? "S1" : "S2");
    for (std::size_t k = 0; k < d.e_special.size(); ++k) {
      std::ostringstream os;
      os << "index " << d.e_special[k].first << " value "
         << print_ordinal(d.e_special[k].second) << " heart "
         << print_ordinal(d.hearts[k].second);
      if (d.diamonds) os << " diamond " << print_ordinal((*d.diamonds)[k].second);
      out.kv("special", os.str());
    }
  }
  Ordinal v;
  if (op == "s")
    v = sum_s(s);
  else if (op == "s1")
    v = sum_s1(s);
  else if (op == "s2")
    v = sum_s2(s);
  else if (op == "h")
    v = sum_h(s);
  else
    throw CLI::ValidationError("--op must be one of s, s1, s2, h");
  out.kv("result", print_ordinal(v));
  return kExitOk;
}

int run_realize(const std::string& seq_text, unsigned prefix_budget, std::uint64_t seed,
                const Output& out) {
  OmegaSequence s = parse_sequence(seq_text);
  BlockPlan plan = realize(s);
  dump_plan(plan, out);
  OrmfReport rep = check_ormf(plan, 16, seed);
  if (rep.pass)
    out.kv("ormf", "pass");
  else if (rep.malformed)
    out.kv("ormf", "malformed " + rep.detail);
  else
    out.kv("ormf", "fail");
  if (rep.witness)
    out.kv("witness", print_ordinal(rep.witness->eta) + " " + rep.witness->description);
  Ordinal eta;
  for (unsigned k = 0; k < prefix_budget && eta < plan.claimed_total(); ++k) {
    Location loc = locate(plan, eta);
    std::ostringstream os;
    os << print_ordinal(eta) << " source " << loc.source << " rank " << print_ordinal(loc.rank);
    out.kv("position", os.str());
    eta = classical_add(eta, Ordinal(std::uint64_t{1}));
  }
  return rep.pass ? kExitOk : kExitPropertyFailure;
}

int run_locate(const std::string& seq_text, const std::string& eta_text, const Output& out) {
  OmegaSequence s = parse_sequence(seq_text);
  Ordinal eta = parse_ordinal(eta_text);
  BlockPlan plan = realize(s);
  Location loc = locate(plan, eta);
  out.kv("source", std::to_string(loc.source));
  out.kv("rank", print_ordinal(loc.rank));
  std::ostringstream os;
  bool first = true;
  for (SourceIndex j : finite_set_F(plan, eta)) {
    os << (first ? "" : " ") << j;
    first = false;
  }
  out.kv("offenders", first ? "none" : os.str());
  return kExitOk;
}

int run_tree_size(const std::string& tree_text, const std::string& mode, const Output& out) {
  TreeDesc t = parse_tree(tree_text);
  TreeSizeMode m;
  if (mode == "tree")
    m = TreeSizeMode::tree;
  else if (mode == "formula-root")
    m = TreeSizeMode::formula_root;
  else
    throw CLI::ValidationError("--mode must be tree or formula-root");
  out.kv("result", print_ordinal(tree_size(t, m)));
  return kExitOk;
}

HarnessBounds load_bounds(const std::string& path) {
  HarnessBounds b;
  if (path.empty()) return b;
  std::ifstream in(path);
  if (!in) throw std::domain_error("cannot open config file: " + path);
  std::string line;
  while (std::getline(in, line)) {
    auto eq = line.find('=');
    if (eq == std::string::npos || line.empty() || line[0] == '#') continue;
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    if (key == "rank_entry_bound") b.rank_entry_bound = std::stoul(value);
    else if (key == "descent_budget") b.descent_budget = std::stoul(value);
    else if (key == "walk_budget") b.walk_budget = std::stoul(value);
    else if (key == "skip_ceiling") b.skip_ceiling = std::stod(value);
    else throw std::domain_error("unknown config key: " + key);
  }
  return b;
}

int run_verify(const std::string& suite, std::size_t trials, std::uint64_t seed,
               const std::string& config, const Output& out) {
  HarnessBounds bounds = load_bounds(config);
  bool ok = true;
  for (const auto& rep : run_suites(suite, trials, seed, bounds)) {
    std::cout << render_report(rep, out.machine, bounds.skip_ceiling);
    ok = ok && rep.passed(bounds.skip_ceiling);
  }
  return ok ? kExitOk : kExitPropertyFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact ordinal arithmetic below epsilon_0 and infinitary sums"};
  app.require_subcommand(1);

  std::string format = "text";
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"text", "machine"}));

  std::uint64_t seed = 20240101;
  bool seed_given = false;
  app.add_option("--seed", seed, "random seed")->each([&](const std::string&) { seed_given = true; });

  std::string expr, seq_text, tree_text, eta_text;
  std::string op = "s", mode = "tree", suite = "all", config;
  bool explain = false;
  unsigned prefix_budget = 0;
  std::size_t trials = 200;

  auto* eval = app.add_subcommand("eval", "evaluate an ordinal expression");
  eval->add_option("expr", expr, "expression over +, (+), (x)")->required();

  auto* infsum = app.add_subcommand("infsum", "evaluate an infinitary sum of a sequence");
  infsum->add_option("seq", seq_text, "sequence descriptor")->required();
  infsum->add_option("--op", op, "s, s1, s2 or h");
  infsum->add_flag("--explain", explain, "print the decomposition");

  auto* realize_cmd = app.add_subcommand("realize", "realize a sequence as an ormf mixed sum");
  realize_cmd->add_option("seq", seq_text, "sequence descriptor")->required();
  realize_cmd->add_option("--prefix", prefix_budget, "dump the first N positions");

  auto* locate_cmd = app.add_subcommand("locate", "find the owner of a position in the realization");
  locate_cmd->add_option("seq", seq_text, "sequence descriptor")->required();
  locate_cmd->add_option("eta", eta_text, "target position")->required();

  auto* tree_cmd = app.add_subcommand("tree-size", "ordinal size of a well-founded tree");
  tree_cmd->add_option("tree", tree_text, "tree expression")->required();
  tree_cmd->add_option("--mode", mode, "tree or formula-root");

  auto* verify_cmd = app.add_subcommand("verify", "run the verification harness");
  verify_cmd->add_option("--suite", suite,
                         "all, minimality, impossibility, monotonicity, rank, realization, sumh");
  verify_cmd->add_option("--trials", trials, "randomized trials per suite");
  verify_cmd->add_option("--config", config, "harness bounds file (key=value lines)");

  CLI11_PARSE(app, argc, argv);

  if (!seed_given) {
    if (const char* env = std::getenv("ORDSUM_SEED")) seed = std::strtoull(env, nullptr, 10);
  }
  Output out{format == "machine"};

  try {
    if (eval->parsed()) return run_eval(expr, out);
    if (infsum->parsed()) return run_infsum(seq_text, op, explain, out);
    if (realize_cmd->parsed()) return run_realize(seq_text, prefix_budget, seed, out);
    if (locate_cmd->parsed()) return run_locate(seq_text, eta_text, out);
    if (tree_cmd->parsed()) return run_tree_size(tree_text, mode, out);
    if (verify_cmd->parsed()) return run_verify(suite, trials, seed, config, out);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParseError;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitParseError;
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kExitDomainError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomainError;
  }
  return kExitOk;
}
