#include "cli.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "lsm/errors.hpp"
#include "lsm/json_io.hpp"
#include "lsm/parikh.hpp"
#include "lsm/substitution.hpp"
#include "lsm/verify.hpp"
#include "lsm/witnesses.hpp"

namespace lsm::cli {

namespace {

struct NRange {
  std::size_t first = 1;
  std::size_t last = 1;
};

std::size_t parse_count(std::string_view text) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ConfigError("not a nonnegative integer: '" + std::string(text) + "'");
  }
  return value;
}

// "a" or "a..b" with 1 <= a <= b.
NRange parse_range(std::string_view text) {
  NRange r;
  if (auto dots = text.find(".."); dots != std::string_view::npos) {
    r.first = parse_count(text.substr(0, dots));
    r.last = parse_count(text.substr(dots + 2));
  } else {
    r.first = r.last = parse_count(text);
  }
  if (r.first == 0 || r.last < r.first) {
    throw ConfigError("invalid n range '" + std::string(text) + "'");
  }
  return r;
}

// Options shared by the analysis subcommands.
struct ScanOptions {
  int p = 2;
  std::string n = "1";
  std::optional<std::size_t> prefix_len;
  bool auto_stabilize = true;
  std::string format = "csv";
  std::string output;
  std::size_t max_word_len = Limits{}.max_word_len;
  unsigned threads = 0;
};

void add_common(CLI::App* cmd, ScanOptions& o, bool with_n, bool with_format) {
  cmd->add_option("--p", o.p, "substitution parameter (p >= 2)")->required();
  if (with_n) {
    cmd->add_option("--n", o.n, "window length n or range a..b")->required();
    cmd->add_option("--prefix-len", o.prefix_len,
                    "scan exactly this many letters (disables "
                    "auto-stabilization)");
    cmd->add_flag("--auto-stabilize,!--no-auto-stabilize", o.auto_stabilize,
                  "double the scanned prefix until the vector set is stable");
    cmd->add_option("--threads", o.threads, "worker threads (0 = all cores)");
  }
  if (with_format) {
    cmd->add_option("--format", o.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
  }
  cmd->add_option("--output", o.output, "write data here instead of stdout");
  cmd->add_option("--max-word-len", o.max_word_len,
                  "cap on materialized word length");
}

class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : out_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) {
        throw ConfigError("cannot open output file " + path);
      }
      out_ = file_.get();
    }
  }
  std::ostream& stream() { return *out_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* out_;
};

ScanPolicy policy_from(const ScanOptions& o, bool auto_flag_given) {
  ScanPolicy policy;
  if (o.prefix_len) {
    if (auto_flag_given && o.auto_stabilize) {
      throw ConfigError("--prefix-len and --auto-stabilize are exclusive");
    }
    policy.auto_stabilize = false;
    policy.prefix_len = *o.prefix_len;
  } else if (!o.auto_stabilize) {
    policy.auto_stabilize = false;
    policy.prefix_len = 1'000'000;
  }
  return policy;
}

std::vector<WindowSpectrum> scan_range(const ScanOptions& o,
                                       const ScanPolicy& policy,
                                       std::ostream& err) {
  require_valid_p(o.p);
  const NRange range = parse_range(o.n);
  const Limits limits{o.max_word_len};
  const std::size_t want = required_snapshot_length(policy, range.last);
  FixedPointStream stream(o.p, limits);
  // A short snapshot only costs stabilization, never correctness.
  const auto snapshot = stream.ensure(std::min(want, limits.max_word_len));
  if (snapshot.size() < initial_scan_length(policy, range.last) &&
      policy.auto_stabilize) {
    throw ResourceLimitError("--max-word-len too small for n=" +
                             std::to_string(range.last));
  }
  if (range.last > range.first) {
    err << "scanning p=" << o.p << " n=" << range.first << ".."
        << range.last << " over " << snapshot.size() << " letters\n";
  }
  return spectra(snapshot, o.p, range.first, range.last, policy, o.threads);
}

int cmd_generate(int p, std::optional<std::size_t> prefix_n,
                 std::optional<unsigned> iterate_k, const ScanOptions& o,
                 std::ostream& out) {
  if (prefix_n.has_value() == iterate_k.has_value()) {
    throw ConfigError("give exactly one of --prefix and --iterate");
  }
  const Limits limits{o.max_word_len};
  const Word w = prefix_n ? prefix(p, *prefix_n, limits)
                          : iterate(Substitution(p), *iterate_k, limits);
  Sink sink(o.output, out);
  sink.stream() << w.to_string() << '\n';
  return kExitOk;
}

int cmd_ac(const ScanOptions& o, bool auto_flag_given, std::ostream& out,
           std::ostream& err) {
  const auto specs = scan_range(o, policy_from(o, auto_flag_given), err);
  Sink sink(o.output, out);
  auto& os = sink.stream();
  if (o.format == "csv") {
    os << "n,ac,stabilized\n";
    for (const auto& s : specs) {
      os << s.n << ',' << s.size() << ',' << (s.stabilized ? "true" : "false")
         << '\n';
    }
  } else {
    json doc = json::array();
    for (const auto& s : specs) {
      json row = to_json(s);
      row["ac"] = s.size();
      doc.push_back(std::move(row));
    }
    os << doc.dump(2) << '\n';
  }
  return kExitOk;
}

int cmd_balance(const ScanOptions& o, bool auto_flag_given, std::ostream& out,
                std::ostream& err) {
  const auto specs = scan_range(o, policy_from(o, auto_flag_given), err);
  Sink sink(o.output, out);
  auto& os = sink.stream();
  if (o.format == "csv") {
    os << "n,spread_L,spread_S,spread_M,stabilized\n";
    for (const auto& s : specs) {
      os << s.n << ',' << spread(s, Letter::L) << ',' << spread(s, Letter::S)
         << ',' << spread(s, Letter::M) << ','
         << (s.stabilized ? "true" : "false") << '\n';
    }
  } else {
    json doc = json::array();
    for (const auto& s : specs) {
      doc.push_back(json{{"p", s.p},
                         {"n", s.n},
                         {"spread_L", spread(s, Letter::L)},
                         {"spread_S", spread(s, Letter::S)},
                         {"spread_M", spread(s, Letter::M)},
                         {"stabilized", s.stabilized},
                         {"prefix_len", s.scanned_prefix_len}});
    }
    os << doc.dump(2) << '\n';
  }
  return kExitOk;
}

json letter_report(int p, Letter letter, std::size_t max_n,
                   const Limits& limits) {
  WitnessOptions options;
  options.limits = limits;
  json report;
  try {
    report = witness_report(p, balance_witness_pair(p, letter, options),
                            WitnessStatus::validated);
  } catch (const FormulaInvalidError& e) {
    const FormulaPair raw = balance_formula_pair(p, letter, limits);
    report = json{{"p", p},
                  {"letter", std::string(1, to_char(letter))},
                  {"length", nullptr},
                  {"difference",
                   std::abs(static_cast<std::int64_t>(raw.v.count(letter)) -
                            static_cast<std::int64_t>(raw.w.count(letter)))},
                  {"v_offset", nullptr},
                  {"w_offset", nullptr},
                  {"status", to_string(WitnessStatus::formula_invalid)},
                  {"v", raw.v.to_string()},
                  {"w", raw.w.to_string()},
                  {"v_length", raw.v.size()},
                  {"w_length", raw.w.size()},
                  {"reason", e.what()}};
  } catch (const MembershipUnresolvedError& e) {
    const FormulaPair raw = balance_formula_pair(p, letter, limits);
    report = json{{"p", p},
                  {"letter", std::string(1, to_char(letter))},
                  {"length", raw.v.size()},
                  {"difference", claimed_difference(letter)},
                  {"v_offset", nullptr},
                  {"w_offset", nullptr},
                  {"status", to_string(WitnessStatus::membership_unresolved)},
                  {"v", raw.v.to_string()},
                  {"w", raw.w.to_string()},
                  {"reason", e.what()}};
  }
  if (auto found = search_witness_pair(p, letter, claimed_difference(letter),
                                       max_n, ScanPolicy{}, limits)) {
    report["search"] = witness_report(p, *found, WitnessStatus::validated);
  } else {
    report["search"] = nullptr;
  }
  return report;
}

int cmd_witnesses(const ScanOptions& o, const std::string& letter,
                  bool ac7, int big_n, std::size_t max_n, std::ostream& out) {
  require_valid_p(o.p);
  const Limits limits{o.max_word_len};
  json doc = json::array();
  if (ac7) {
    WitnessOptions options;
    options.limits = limits;
    try {
      doc.push_back(witness_report(ac7_family(o.p, big_n, options),
                                   WitnessStatus::validated));
    } catch (const FormulaInvalidError& e) {
      doc.push_back(json{{"p", o.p},
                         {"N", big_n},
                         {"status", to_string(WitnessStatus::formula_invalid)},
                         {"reason", e.what()}});
    } catch (const MembershipUnresolvedError& e) {
      doc.push_back(
          json{{"p", o.p},
               {"N", big_n},
               {"status", to_string(WitnessStatus::membership_unresolved)},
               {"reason", e.what()}});
    }
  }
  if (!letter.empty()) {
    doc.push_back(letter_report(o.p, parse_letter(letter), max_n, limits));
  } else if (!ac7) {
    for (Letter a : kAlphabet) {
      doc.push_back(letter_report(o.p, a, max_n, limits));
    }
  }
  Sink sink(o.output, out);
  sink.stream() << doc.dump(2) << '\n';
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Fixed points of L->L^pS, S->M, M->L^{p-1}S: generation, "
               "Abelian complexity, balance and verification"};
  app.name(args.empty() ? "lsmword" : args.front());
  app.require_subcommand(1);

  ScanOptions gen_opts;
  std::optional<std::size_t> gen_prefix;
  std::optional<unsigned> gen_iterate;
  auto* gen = app.add_subcommand("generate", "print a prefix or an iterate");
  add_common(gen, gen_opts, false, false);
  gen->add_option("--prefix", gen_prefix, "first n letters of u^(p)");
  gen->add_option("--iterate", gen_iterate, "phi_p^k(L)");

  ScanOptions ac_opts;
  auto* ac = app.add_subcommand("ac", "Abelian complexity per n");
  add_common(ac, ac_opts, true, true);

  ScanOptions bal_opts;
  auto* bal = app.add_subcommand("balance", "per-letter spreads per n");
  add_common(bal, bal_opts, true, true);

  ScanOptions wit_opts;
  std::string wit_letter;
  bool wit_ac7 = false;
  int wit_N = 1;
  std::size_t wit_max_n = 2000;
  auto* wit = app.add_subcommand("witnesses", "explicit witness factors");
  add_common(wit, wit_opts, false, false);
  wit->add_option("--letter", wit_letter, "L, S or M")
      ->check(CLI::IsMember({"L", "S", "M"}));
  wit->add_flag("--ac7", wit_ac7, "build the seven-vector family");
  wit->add_option("--N", wit_N, "family index (N >= 1)");
  wit->add_option("--max-n", wit_max_n, "search bound for window lengths");

  VerifyConfig vcfg;
  std::vector<std::string> ver_checks;
  std::string ver_output;
  bool ver_no_timing = false;
  bool ver_auto = true;
  std::optional<std::size_t> ver_scan_len;
  auto* ver = app.add_subcommand("verify", "run the verification suite");
  ver->add_option("--p", vcfg.ps, "values of p, comma separated")
      ->delimiter(',');
  ver->add_option("--max-n", vcfg.max_n, "largest window length");
  ver->add_option("--prefix-len", vcfg.prefix_len,
                  "prefix length for structural and sampling checks");
  ver->add_option("--seed", vcfg.seed, "seed for random factor sampling");
  ver->add_option("--samples", vcfg.samples, "random factors per p");
  ver->add_option("--checks", ver_checks, "subset of checks, comma separated")
      ->delimiter(',');
  ver->add_flag("--auto-stabilize,!--no-auto-stabilize", ver_auto,
                "stabilize spectra by doubling");
  ver->add_option("--scan-len", ver_scan_len,
                  "fixed scan length when not auto-stabilizing");
  ver->add_option("--max-word-len", vcfg.limits.max_word_len,
                  "cap on materialized word length");
  ver->add_option("--threads", vcfg.threads, "worker threads (0 = all cores)");
  ver->add_option("--output", ver_output, "write the report here");
  ver->add_flag("--no-timing", ver_no_timing,
                "omit timing fields for byte-stable reports");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) {
    argv.push_back(a.c_str());
  }
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen) {
      return cmd_generate(gen_opts.p, gen_prefix, gen_iterate, gen_opts, out);
    }
    if (*ac) {
      return cmd_ac(ac_opts, ac->count("--auto-stabilize") > 0, out, err);
    }
    if (*bal) {
      return cmd_balance(bal_opts, bal->count("--auto-stabilize") > 0, out,
                         err);
    }
    if (*wit) {
      if (wit_ac7 && wit_N < 1) {
        throw ConfigError("--N must be at least 1");
      }
      return cmd_witnesses(wit_opts, wit_letter, wit_ac7, wit_N, wit_max_n,
                           out);
    }
    if (*ver) {
      if (!ver_checks.empty()) {
        vcfg.checks.clear();
        for (const auto& c : ver_checks) {
          vcfg.checks.push_back(parse_check_kind(c));
        }
      }
      vcfg.policy.auto_stabilize = ver_auto;
      if (!ver_auto) {
        vcfg.policy.prefix_len = ver_scan_len.value_or(vcfg.prefix_len);
      }
      validate(vcfg);
      const VerificationReport report = run_all(
          vcfg, [&err](std::string_view msg) { err << msg << '\n'; });
      Sink sink(ver_output, out);
      sink.stream() << to_json(report, !ver_no_timing).dump(2) << '\n';
      return report.passed() ? kExitOk : kExitFailure;
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ResourceLimitError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace lsm::cli
