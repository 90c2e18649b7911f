#include <iostream>
#include <memory>

#include <CLI11.hpp>

#include <fgdist/error.hpp>
#include <fgdist/io.hpp>
#include <fgdist/text.hpp>

#include "law_source.hpp"

using namespace fgdist;
using namespace fgdist::cli;

namespace {

struct Options {
  LawOptions law;
  unsigned p = 0;
  unsigned cap = 0;
  std::string output;
  std::string format;
  std::string table_file;
  std::string input = "-";
  std::vector<std::string> operands;
  std::size_t block = 0;
};

void add_law_options(CLI::App* sub, Options& o) {
  sub->add_option("--builtin", o.law.builtin, "ga, gm, t2, or a product such as ga*gm");
  sub->add_option("--law", o.law.law_file, "JSON law file");
  sub->add_option("-p,--prime", o.p, "characteristic (builtins default to 2)");
  sub->add_option("-R,--level", o.law.level, "truncation level R");
  sub->add_option("--cap", o.cap, "series truncation degree");
  sub->add_flag("--unsafe-cap", o.law.unsafe_cap, "allow a cap below the safe default");
}

void add_output_options(CLI::App* sub, Options& o) {
  sub->add_option("-o,--output", o.output, "write the result here instead of stdout");
  sub->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
}

void finish_law_options(Options& o, const CLI::App* sub) {
  auto given = [&](const char* name) {
    const auto* opt = sub->get_option_no_throw(name);
    return opt && opt->count() > 0;
  };
  if (given("--prime")) o.law.p = o.p;
  if (given("--cap")) o.law.cap = o.cap;
}

int emit_report(const Options& o, const CheckReport& report, const std::string& headline = {}) {
  if (o.format == "json") {
    write_text(o.output, report_to_json(report).dump(2));
  } else {
    write_text(o.output, headline + report.to_text());
  }
  return report.passed() ? ok : refused;
}

PoissonTable load_table(const Options& o) {
  if (!o.table_file.empty()) return table_from_json(parse_json(read_text(o.table_file)));
  const DistLevel dist(load_law(o.law), o.law.level);
  return extract_pi(dist);
}

std::string table_text(const PoissonTable& t) {
  const auto& sh = t.splay().shape();
  if (t.entries().empty()) return "pi = 0 (no cross-block brackets)\n";
  std::string s;
  for (auto it = t.entries().rbegin(); it != t.entries().rend(); ++it)
    s += "pi(" + sh.generator_name(it->first.first) + ", " + sh.generator_name(it->first.second) +
         ") = " + combination_text(sh, it->second) + "\n";
  return s;
}

int run(const std::string& cmd, Options& o) {
  if (cmd == "validate") {
    const auto law = load_law(o.law);
    return emit_report(o, validate(law));
  }
  if (cmd == "mul" || cmd == "commutator" || cmd == "comul" || cmd == "antipode") {
    const DistLevel dist(load_law(o.law), o.law.level);
    std::vector<Distribution> args;
    for (const auto& s : o.operands) args.push_back(parse_distribution(dist, s));
    std::string text;
    json j;
    if (cmd == "comul") {
      const auto t = dist.comul(args.at(0));
      text = dist.to_text(t);
      j = {{"tensor", text}};
    } else {
      Distribution r = args.at(0);
      if (cmd == "antipode") r = dist.antipode(r);
      else if (cmd == "commutator") r = dist.commutator(args.at(0), args.at(1));
      else
        for (std::size_t i = 1; i < args.size(); ++i) r = dist.mul(r, args[i]);
      text = dist.to_text(r);
      j = {{"additive", text}, {"multiplicative", combination_text(dist.shape(), dist.additive_to_mult(r))}};
    }
    write_text(o.output, o.format == "json" ? j.dump(2) : text);
    return ok;
  }
  if (cmd == "pi") {
    const auto table = load_table(o);
    write_text(o.output, o.format == "json" ? table_to_json(table).dump(2) : table_text(table));
    return ok;
  }
  if (cmd == "check") {
    if (!o.operands.empty()) o.table_file = o.operands.front();
    return emit_report(o, check_poisson_axioms(load_table(o)));
  }
  if (cmd == "pbw") {
    const auto table = load_table(o);
    const RewriteSystem sys(table.splay_ptr(), table);
    const auto& sh = sys.shape();
    const auto nf = sys.normal_form(parse_word(sh, o.operands.at(0)));
    if (o.format == "json") write_text(o.output, combination_to_json(sh, nf).dump(2));
    else write_text(o.output, combination_text(sh, nf));
    return ok;
  }
  if (cmd == "confluence") {
    const auto table = load_table(o);
    const RewriteSystem sys(table.splay_ptr(), table);
    const auto report = s_polynomial_report(sys);
    if (o.format == "json") write_text(o.output, report_to_json(report.to_check()).dump(2));
    else write_text(o.output, report.to_text(sys.shape()));
    return report.all_zero() ? ok : refused;
  }
  if (cmd == "reconstruct") {
    const auto table = load_table(o);
    const auto U = build_U(table.splay_ptr(), table);
    if (o.format == "json") {
      write_text(o.output, algebra_to_json(U).dump(1));
    } else {
      const auto& sh = U.shape();
      std::string s;
      for (auto u : U.basis())
        for (auto v : U.basis())
          s += monomial_text(sh, u) + " * " + monomial_text(sh, v) + " = " +
               combination_text(sh, U.product(u, v)) + "\n";
      write_text(o.output, s);
    }
    return ok;
  }
  if (cmd == "compare") {
    const auto U = algebra_from_json(parse_json(read_text(o.input)));
    const DistLevel dist(load_law(o.law), o.law.level);
    const auto report = compare_with_oracle(U, dist);
    if (o.format == "json") return emit_report(o, report);
    const auto& e = report.entries.front();
    write_text(o.output, e.passed ? e.detail : "differ at " + e.witness + ": " + e.detail);
    return report.passed() ? ok : refused;
  }
  if (cmd == "dvps") {
    const auto U = algebra_from_json(parse_json(read_text(o.input)));
    return emit_report(o, dvps_verify(U));
  }
  if (cmd == "swap") {
    const auto table = load_table(o);
    return emit_report(o, swap_order_equivalence(table.splay_ptr(), table, o.block));
  }
  if (cmd == "demo-t2") {
    if (!is_prime(o.p ? o.p : 2)) throw ParseError(std::to_string(o.p) + " is not prime");
    return demo_t2(o.p ? o.p : 2, o.law.level, o.format == "json");
  }
  throw ParseError("unknown command " + cmd);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fgdist: distribution algebras of formal groups over F_p"};
  app.require_subcommand(1);
  Options o;

  struct CommandInfo {
    const char* name;
    const char* help;
    const char* format;
  };
  const CommandInfo commands[] = {
      {"validate", "check the formal group axioms of a law", "text"},
      {"mul", "multiply distributions: mul A B [C ...]", "text"},
      {"comul", "comultiplication of one distribution", "text"},
      {"commutator", "AB - BA", "text"},
      {"antipode", "antipode of one distribution", "text"},
      {"pi", "extract the Poisson table of the commutative blocks", "json"},
      {"check", "run the Poisson axiom checks on a table file or a law", "text"},
      {"pbw", "normal form of a generator word, e.g. \"y x^2\"", "text"},
      {"confluence", "S-polynomial report of the rewrite system", "text"},
      {"reconstruct", "build U from blocks and table", "json"},
      {"compare", "compare an algebra (file or stdin) with Dist(G)", "text"},
      {"dvps", "verify the bialgebra structure of an algebra (file or stdin)", "text"},
      {"swap", "order-swap equivalence for blocks i, i+1", "text"},
      {"demo-t2", "closed-form T2 formulas against the pairing", "text"},
  };
  std::vector<CLI::App*> subs;
  for (const auto& s : commands) {
    auto* sub = app.add_subcommand(s.name, s.help);
    const std::string name = s.name;
    if (name == "demo-t2") {
      sub->add_option("-p,--prime", o.p, "characteristic");
      sub->add_option("-R,--level", o.law.level, "truncation level R");
    } else if (name != "dvps") {
      add_law_options(sub, o);
    }
    add_output_options(sub, o);
    if (name == "mul") sub->add_option("operands", o.operands, "distributions")->required()->expected(2, -1);
    if (name == "commutator") sub->add_option("operands", o.operands, "distributions")->required()->expected(2);
    if (name == "comul" || name == "antipode")
      sub->add_option("operand", o.operands, "distribution")->required()->expected(1);
    if (name == "pbw") sub->add_option("word", o.operands, "generator word")->required()->expected(1);
    if (name == "check") sub->add_option("table", o.operands, "table JSON file")->expected(0, 1);
    if (name == "compare" || name == "dvps") sub->add_option("algebra", o.input, "algebra JSON file, - for stdin");
    if (name == "pbw" || name == "confluence" || name == "reconstruct" || name == "pi" || name == "swap")
      sub->add_option("--table", o.table_file, "Poisson table JSON file instead of extracting one");
    if (name == "swap") sub->add_option("--block", o.block, "swap blocks i and i+1");
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? ok : bad_input;
  }

  for (std::size_t i = 0; i < subs.size(); ++i) {
    auto* sub = subs[i];
    if (!sub->parsed()) continue;
    if (o.format.empty()) o.format = commands[i].format;
    try {
      finish_law_options(o, sub);
      return run(sub->get_name(), o);
    } catch (const ParseError& e) {
      std::cerr << "input error: " << e.what() << "\n";
      return bad_input;
    } catch (const json::exception& e) {
      std::cerr << "input error: " << e.what() << "\n";
      return bad_input;
    } catch (const AxiomError& e) {
      std::cerr << "refused: " << e.axiom() << " fails, witness " << e.witness() << "\n";
      return refused;
    } catch (const Error& e) {
      std::cerr << "error: " << e.what() << "\n";
      return refused;
    }
  }
  return bad_input;
}
