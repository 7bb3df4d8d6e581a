#ifndef BANDKIT_CLI_HPP_
#define BANDKIT_CLI_HPP_

#include <algorithm>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bandkit.hpp"

namespace bandkit {
namespace cli {

//! Exit codes: 0 success / HOLDS, 1 semantic negative (FAILS, NO-SOLUTION,
//! NOT-INDUCED, NOT-A-BAND), 2 usage or parse error, 3 budget exceeded.
enum ExitCode : int {
  kOk = 0,
  kNegative = 1,
  kUsage = 2,
  kBudget = 3,
};

namespace detail {

inline std::map<letter_type, std::uint32_t> parse_assignment(const std::string& text) {
  std::map<letter_type, std::uint32_t> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string item = text.substr(pos, comma == std::string::npos
                                            ? std::string::npos
                                            : comma - pos);
    std::size_t eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw parse_error("bad assignment item \"" + item
                        + "\", expected letter=element");
    }
    Word letter = Word::parse(item.substr(0, eq));
    if (letter.size() != 1) {
      throw parse_error("assignment key \"" + item.substr(0, eq)
                        + "\" is not a single letter");
    }
    std::uint32_t element;
    try {
      element = static_cast<std::uint32_t>(std::stoul(item.substr(eq + 1)));
    } catch (const std::exception&) {
      throw parse_error("bad element index in \"" + item + "\"");
    }
    out[letter[0]] = element;
    if (comma == std::string::npos) {
      break;
    }
    pos = comma + 1;
  }
  return out;
}

inline std::string invariant_display(const Variety& v, const Word& w) {
  if (v.is_all_bands()) {
    return b_canonical(w).str();
  }
  if (auto atom = v.single_atom()) {
    return atom_invariant_word(*atom, w).str();
  }
  return invariant(v, w).str();
}

}  // namespace detail

//! Runs the command line given as an argument vector (no program name).
//! All output goes to the supplied streams; never calls exit().
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"canonical forms, identities and word schemes for bands", "bandkit"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand

  std::uint64_t budget_value = 0;
  app.add_option("--budget", budget_value,
                 "cap for tables, closures and assignment sweeps")
      ->envname("BANDKIT_BUDGET");

  std::string word_text, u_text, v_text, variety_text = "BAND";
  std::string file, op_file, table_file, assign_text;
  std::uint32_t gen_count = 0;
  bool count_only = false;

  auto add_variety = [&](CLI::App* cmd) {
    cmd->add_option("--variety", variety_text, "variety in the band lattice")
        ->capture_default_str();
  };

  auto* canon = app.add_subcommand("canon", "print the canonical invariant of a word");
  canon->add_option("word", word_text)->required();
  add_variety(canon);

  auto* check = app.add_subcommand("check", "decide whether an identity holds");
  check->add_option("u", u_text)->required();
  check->add_option("v", v_text)->required();
  add_variety(check);

  auto* freeband = app.add_subcommand("freeband", "enumerate a relatively free band");
  freeband->add_option("-k", gen_count, "number of generators")->required();
  add_variety(freeband);
  auto* table_opt =
      freeband->add_option("--table", table_file, "write the Cayley table as a band file");
  freeband->add_flag("--count-only", count_only, "print only the element count")
      ->excludes(table_opt);

  auto* sverify = app.add_subcommand("scheme-verify", "check scheme conditions");
  sverify->add_option("file", file, "scheme file")->required();
  add_variety(sverify);

  auto* ssolve = app.add_subcommand("scheme-solve", "find a word a scheme comes from");
  ssolve->add_option("file", file, "scheme file")->required();
  add_variety(ssolve);

  auto* band = app.add_subcommand("band", "operate on band files");
  band->require_subcommand(1);
  auto* bcheck = band->add_subcommand("check", "validate the band laws");
  bcheck->add_option("file", file, "band file")->required();
  auto* beval = band->add_subcommand("eval", "evaluate a word in a band");
  beval->add_option("file", file, "band file")->required();
  beval->add_option("--word", word_text)->required();
  beval->add_option("--assign", assign_text, "letter=element pairs, comma separated")
      ->required();
  auto* binduced = band->add_subcommand("induced", "search for an inducing word");
  binduced->add_option("file", file, "band file")->required();
  binduced->add_option("--op-file", op_file, "operation file")->required();

  try {
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kUsage;
  }

  Budget budget;
  if (budget_value != 0) {
    budget.table_cells = budget_value;
    budget.closure_elements = budget_value;
    budget.assignments = budget_value;
  }

  try {
    if (*canon) {
      Variety v = Variety::parse(variety_text);
      out << detail::invariant_display(v, Word::parse(word_text)) << "\n";
      return kOk;
    }
    if (*check) {
      Variety v = Variety::parse(variety_text);
      bool holds = satisfies(v, Word::parse(u_text), Word::parse(v_text));
      out << (holds ? "HOLDS" : "FAILS") << "\n";
      return holds ? kOk : kNegative;
    }
    if (*freeband) {
      Variety v = Variety::parse(variety_text);
      if (!table_file.empty()) {
        FreeBand fb = free_band(v, gen_count, budget);
        save_json_file(table_file, band_to_json(fb.band()));
        out << fb.band().size() << "\n";
      } else {
        out << free_band_representatives(v, gen_count, budget).size() << "\n";
      }
      (void)count_only;  // counting is the default; the flag documents intent
      return kOk;
    }
    if (*sverify) {
      Variety v = Variety::parse(variety_text);
      Scheme s = scheme_from_json(load_json_file(file));
      SchemeReport report = check_scheme(s, v);
      bool essential = is_essential(s);
      std::optional<Permutation> pi;
      if (essential) {
        pi = associated_permutation(s);
      }
      out << "n: " << s.arity() << "\n";
      out << "essential: " << (essential ? "true" : "false") << "\n";
      out << "dependency: " << (report.dependency ? "true" : "false") << "\n";
      out << "c1: " << (report.c1 ? "true" : "false") << "\n";
      out << "c2: " << (report.c2 ? "true" : "false") << "\n";
      out << "pi: " << (pi ? pi->str() : "none") << "\n";
      for (const auto& violation : report.violations) {
        out << "violation: " << violation << "\n";
      }
      return (report.all_ok() && essential && pi) ? kOk : kNegative;
    }
    if (*ssolve) {
      Variety v = Variety::parse(variety_text);
      if (v.is_all_bands()) {
        err << "scheme-solve: the variety of all bands is not supported; "
               "pick a proper variety\n";
        return kUsage;
      }
      Scheme s = scheme_from_json(load_json_file(file));
      SolveResult result = solve_scheme(s, v);
      if (result.ok()) {
        out << result.word->str() << "\n";
        return kOk;
      }
      out << "NO-SOLUTION: " << result.witness << "\n";
      return kNegative;
    }
    if (*bcheck) {
      try {
        FiniteBand s = band_from_json(load_json_file(file));
        out << "OK: band of size " << s.size() << "\n";
        return kOk;
      } catch (const band_error& e) {
        out << "NOT-A-BAND: " << e.what() << "\n";
        return kNegative;
      }
    }
    if (*beval) {
      FiniteBand s = band_from_json(load_json_file(file));
      out << eval_word(s, Word::parse(word_text),
                       detail::parse_assignment(assign_text))
          << "\n";
      return kOk;
    }
    if (*binduced) {
      FiniteBand s = band_from_json(load_json_file(file));
      WordOperation f = operation_from_json(load_json_file(op_file), s.size());
      if (auto witness = induced_by_word(s, f, budget)) {
        out << witness->str() << "\n";
        return kOk;
      }
      out << "NOT-INDUCED" << "\n";
      return kNegative;
    }
  } catch (const budget_error& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  err << "no subcommand\n";
  return kUsage;
}

}  // namespace cli
}  // namespace bandkit

#endif  // BANDKIT_CLI_HPP_
