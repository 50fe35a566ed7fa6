// Acceptance run: one [PASS]/[FAIL] line per criterion, exit status 0 only if all pass.
// With --digest it prints the fixed-seed transcript used by the determinism check.

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "worked.hpp"
#include "hytab/audit.hpp"
#include "hytab/bulldoze.hpp"
#include "hytab/extract.hpp"
#include "hytab/json.hpp"
#include "hytab/oracle.hpp"
#include "hytab/parser.hpp"
#include "hytab/tableau.hpp"
#include "hytab/trace.hpp"
#include "support.hpp"

using namespace hytab;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;
  std::string summary;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    if (notes.size() < 8) notes.push_back(what);
  }
};

// Every decision made by criteria 1-5 goes through here for the audits.
struct AuditLog {
  std::size_t tableaux = 0, branches = 0, countermodels = 0;
  std::set<std::string> checks;
  std::vector<std::string> failures;

  void add(const Decision& d) {
    ++tableaux;
    branches += d.tableau.leaves().size();
    const AuditReport t = audit_tableau(d.tableau);
    record(t, d);
    if (d.verdict != Verdict::NotProvable) return;
    const CalculusSpec& cal = d.tableau.calculus();
    const Branch& b = d.open_branch();
    const ExtractedModel m = extract(b, cal);
    ++countermodels;
    record(audit_countermodel(b, cal, m, bulldoze(m), 6), d);
  }

  void record(const AuditReport& r, const Decision& d) {
    checks.insert(r.checks.begin(), r.checks.end());
    if (!r.passed() && failures.size() < 8) {
      failures.push_back(to_string(d.input) + " in " + d.tableau.calculus().name + ": " + r.summary());
    }
  }
};

AuditLog audits;

Formula parse_with(const std::string& text, std::initializer_list<const char*> noms = {}) {
  ParseOptions o;
  for (const char* n : noms) o.nominals.insert(n);
  return parse(text, o);
}

// Criterion 1: the basic calculus proves <>j & @j p -> <>p with the expected closing pair.
Outcome basic_proof() {
  Outcome o;
  const auto t0 = Clock::now();
  const Formula f = parse_with("<>j & @j p -> <>p", {"j"});
  const Decision d = decide(f, CalculusSpec::tab());
  const double secs = seconds_since(t0);
  audits.add(d);
  o.require(d.verdict == Verdict::Provable, "verdict is " + std::string(to_string(d.verdict)));
  const std::set<Formula> expect{parse_with("@j p", {"j"}), parse_with("@j ~p", {"j"})};
  for (std::size_t leaf : d.tableau.leaves()) {
    const auto& node = d.tableau.nodes()[leaf];
    o.require(node.branch != nullptr, "unexplored leaf");
    if (!node.branch) continue;
    const auto w = is_closed(*node.branch);
    o.require(w.has_value(), "leaf does not replay as closed");
    if (!w) continue;
    const std::set<Formula> got{(*node.branch)[w->first].formula(), (*node.branch)[w->second].formula()};
    o.require(got == expect, "closing pair differs");
    o.require(node.branch->closure_witness() == w, "recorded witness differs from the replay");
  }
  o.require(secs < 1.0, "took " + std::to_string(secs) + " s");
  o.summary = std::to_string(d.tableau.max_branch_size()) + " entries, " + std::to_string(secs) + " s";
  return o;
}

// Criterion 2: without the loop check the transitive calculus runs away; with it, it stops.
Outcome loop_check_needed() {
  Outcome o;
  const auto t0 = Clock::now();
  const Formula f = parse("<>p & []<>p");
  ExpandOptions small;
  small.budget = 200;
  const Decision runaway = satisfy(f, CalculusSpec::tab().with_rules("+Trs"), small);
  const Decision stops = satisfy(f, CalculusSpec::i4());
  const double secs = seconds_since(t0);
  audits.add(runaway);
  audits.add(stops);
  o.require(runaway.verdict == Verdict::Budget && runaway.tableau.budget_exceeded(),
            "without (D): " + std::string(to_string(runaway.verdict)));
  o.require(stops.verdict == Verdict::NotProvable, "with (D): " + std::string(to_string(stops.verdict)));
  if (stops.open_leaf) {
    o.require(applicable_rules(stops.open_branch(), CalculusSpec::i4()).empty(), "open branch is not saturated");
  }
  o.require(secs < 1.0, "took " + std::to_string(secs) + " s");
  o.summary = "without (D) budget 200 exceeded; with (D) saturated after " +
              std::to_string(stops.tableau.total_firings()) + " firings, " + std::to_string(secs) + " s";
  return o;
}

// Criterion 3: extraction, clusters, bulldozing, truncated evaluation and class check.
Outcome pipeline() {
  Outcome o;
  const Formula f = parse("<>p & []<>p");
  const Decision d = satisfy(f, CalculusSpec::i4());
  audits.add(d);
  if (!d.open_leaf) {
    o.require(false, "no open branch");
    return o;
  }
  const Branch& b = d.open_branch();
  const ExtractedModel m = extract(b, CalculusSpec::i4());
  const KripkeModel& k = m.base;
  o.require(k.size() == 2, "extraction has " + std::to_string(k.size()) + " worlds");
  if (k.size() != 2) return o;
  const WorldId i = m.world_of(b.root().prefix);
  const WorldId j = 1 - i;
  o.require(k.edges() == std::vector<std::pair<WorldId, WorldId>>{{i, j}, {j, j}} ||
                (i == 1 && k.edge_count() == 2 && k.related(i, j) && k.related(j, j)),
            "relation is not {(i,j),(j,j)}");
  o.require(k.holds("p", j) && !k.holds("p", i), "V(p) is not {j}");

  const ClusterSplit split = detect_clusters(k, false);
  o.require(split.clusters.size() == 1 && split.clusters[0].members == std::vector<WorldId>{j},
            "clusters are not the single {j}");
  o.require(split.w_minus == std::vector<WorldId>{i}, "irreflexive part is not {i}");

  const BulldozedModel bm = bulldoze(m);
  const TruncatedModel t = truncate(bm, 3, Truncation::Prefix);
  std::set<std::pair<BWorld, BWorld>> edges, expect;
  for (auto [a, c] : t.model.edges()) edges.emplace(t.refs[a], t.refs[c]);
  const BWorld bi{i, std::nullopt};
  for (std::size_t n = 0; n < 3; ++n) {
    expect.emplace(bi, BWorld{j, n});
    for (std::size_t m2 = n + 1; m2 < 3; ++m2) expect.emplace(BWorld{j, n}, BWorld{j, m2});
  }
  o.require(edges == expect, "bulldozed chain differs");
  o.require(denotation(bm, b.nominals()[1]) == BWorld{j, 0}, "the generated nominal is not at copy 0");
  o.require(eval_truncated(bm, bi, f, 3), "root formula false on the bulldozed model with 3 copies");
  const ClassReport cls = certify_class(bm, FrameClass::SPO, 3);
  o.require(cls.passed(), "class check: " + cls.summary());
  o.summary = "worlds {i,j}, rel {(i,j),(j,j)}, V(p)={j}, one cluster {j}, bulldozed SPO";
  return o;
}

// Criterion 4: characteristic formulas, each cell cross-checked with the finite-model oracle.
Outcome axiom_matrix() {
  Outcome o;
  const auto t0 = Clock::now();
  struct Cell {
    const char* formula;
    const char* calculus;
    Verdict expect;
  };
  const std::vector<Cell> cells{
      {"[]p -> [][]p", "i4", Verdict::Provable},   {"[]p -> [][]p", "i4d", Verdict::Provable},
      {"[]p -> [][]p", "po", Verdict::Provable},   {"[]p -> <>p", "i4", Verdict::NotProvable},
      {"[]p -> <>p", "i4d", Verdict::Provable},    {"[]p -> <>p", "po", Verdict::Provable},
      {"[]p -> p", "i4", Verdict::NotProvable},    {"[]p -> p", "po", Verdict::Provable},
      {"@i []~i", "i4", Verdict::Provable},        {"@i []~i", "i4d", Verdict::Provable},
      {"@i []~i", "po", Verdict::NotProvable},     {"@i [](i | []~i)", "po", Verdict::Provable},
  };
  std::size_t settled = 0;
  for (const auto& c : cells) {
    const Formula f = parse_with(c.formula, {"i"});
    const CalculusSpec cal = CalculusSpec::by_name(c.calculus);
    const Decision d = decide(f, cal);
    audits.add(d);
    const std::string cell = std::string(c.formula) + " in " + cal.name;
    o.require(d.verdict == c.expect, cell + ": " + std::string(to_string(d.verdict)));
    // The oracle has to agree with the expectation.
    bool refuted = false;
    if (cal.target == FrameClass::USPO) {
      refuted = testing::serial_unravelling_countermodel(f, 3).has_value();
    } else {
      refuted = oracle_countermodel(f, cal.target, 4).has_value();
    }
    o.require(refuted == (c.expect == Verdict::NotProvable), cell + ": oracle disagrees");
    ++settled;
  }
  const double secs = seconds_since(t0);
  o.require(secs < 10.0, "took " + std::to_string(secs) + " s");
  o.summary = std::to_string(settled) + " cells, " + std::to_string(secs) + " s";
  return o;
}

struct CorpusStats {
  std::size_t decisions = 0, provable = 0, refuted = 0, over_budget = 0, max_firings = 0;
};
CorpusStats corpus_stats;

std::vector<Formula> corpus() {
  std::mt19937_64 rng(20240601);
  testing::RandomFormulaOptions opts;
  std::vector<Formula> out;
  for (int n = 0; n < 500; ++n) out.push_back(testing::random_nnf(rng, opts));
  return out;
}

const std::array<CalculusSpec, 4>& calculi() {
  static const std::array<CalculusSpec, 4> cals{CalculusSpec::tab(), CalculusSpec::i4(), CalculusSpec::i4d(),
                                                CalculusSpec::po()};
  return cals;
}

// Criterion 5: random formulas against the oracle and the certificate checks.
Outcome oracle_cross_validation() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto formulas = corpus();
  std::size_t oracle_agree = 0, certified = 0, monotone = 0;
  for (const Formula& f : formulas) {
    std::array<Verdict, 4> verdicts{};
    for (std::size_t c = 0; c < 4; ++c) {
      const CalculusSpec& cal = calculi()[c];
      const Decision d = decide(f, cal);
      verdicts[c] = d.verdict;
      audits.add(d);
      ++corpus_stats.decisions;
      corpus_stats.max_firings = std::max<std::size_t>(corpus_stats.max_firings, d.tableau.max_branch_size());
      const std::string where = to_string(f) + " in " + cal.name;
      switch (d.verdict) {
        case Verdict::Budget:
          ++corpus_stats.over_budget;
          o.require(false, where + ": budget exceeded");
          break;
        case Verdict::Provable: {
          ++corpus_stats.provable;
          const bool cm = cal.target == FrameClass::USPO ? testing::serial_unravelling_countermodel(f, 3).has_value()
                                                         : oracle_countermodel(f, cal.target, 3).has_value();
          o.require(!cm, where + ": provable but the oracle has a countermodel");
          if (!cm) ++oracle_agree;
          break;
        }
        case Verdict::NotProvable: {
          ++corpus_stats.refuted;
          const Branch& b = d.open_branch();
          const ExtractedModel m = extract(b, cal);
          const BulldozedModel bm = bulldoze(m);
          const FrameClass target = m.variant == ModelVariant::K ? FrameClass::All : cal.target;
          const std::size_t copies = std::max<std::size_t>(2, b.root().payload.modal_depth() + 1);
          const bool truth = check_truth_lemma(b, m).passed();
          const bool cls = certify_class(bm, target, copies).passed();
          const bool root = eval_truncated(bm, designated(bm, m.world_of(b.root().prefix)), b.root().payload, copies);
          const bool falsified = !eval(m.base, m.world_of(b.root().prefix), f);
          o.require(truth, where + ": truth lemma fails");
          o.require(cls, where + ": frame class fails");
          o.require(root, where + ": root formula false on the bulldozed model");
          o.require(falsified, where + ": input not falsified by the countermodel");
          if (truth && cls && root && falsified) ++certified;
          break;
        }
      }
    }
    // Unbounded strict orders are strict orders, so anything I4 proves I4D proves too.
    const bool mono = verdicts[1] != Verdict::Provable || verdicts[2] == Verdict::Provable;
    o.require(mono, to_string(f) + ": provable in TAB_I4 but not in TAB_I4D");
    if (mono) ++monotone;
  }
  const double secs = seconds_since(t0);
  o.require(secs < 300.0, "took " + std::to_string(secs) + " s");
  std::ostringstream s;
  s << formulas.size() << " formulas x 4 calculi: " << corpus_stats.provable << " provable (" << oracle_agree
    << " oracle-confirmed), " << corpus_stats.refuted << " refuted (" << certified << " certified), " << secs << " s";
  o.summary = s.str();
  return o;
}

// Criterion 6: the audits collected from criteria 1-5.
Outcome lemma_audits() {
  Outcome o;
  for (const auto& f : audits.failures) o.require(false, f);
  for (const char* c : {"subformula-property", "generation-forest", "t-sets", "quasi-urfathers", "identity-urfathers",
                        "root-nominals-represented", "children-represented", "representative-carries-formulas",
                        "representatives-fixed", "equalities-respected", "clusters-unnamed", "serial",
                        "cluster-copies-agree", "preservation", "truncation-stable"}) {
    o.require(audits.checks.count(c) != 0, std::string("check never ran: ") + c);
  }
  o.summary = std::to_string(audits.tableaux) + " tableaux, " + std::to_string(audits.branches) + " branches, " +
              std::to_string(audits.countermodels) + " countermodels, " + std::to_string(audits.checks.size()) +
              " kinds of check";
  return o;
}

// The fixed-seed transcript compared across two executions.
std::string digest() {
  std::ostringstream out;
  ExpandOptions opts;
  opts.seed = 7;
  const auto formulas = corpus();
  for (std::size_t n = 0; n < formulas.size(); n += 5) {
    for (const auto& cal : calculi()) {
      const Decision d = decide(formulas[n], cal, opts);
      out << trace_text(d.tableau);
      if (d.verdict == Verdict::NotProvable) {
        const ExtractedModel m = extract(d.open_branch(), cal);
        out << certificate_json(bulldoze(m), 3).dump() << '\n';
      }
    }
  }
  return out.str();
}

std::string run_self(const std::string& self) {
  std::string out;
  FILE* p = popen((self + " --digest").c_str(), "r");
  if (!p) return out;
  std::array<char, 4096> buf{};
  for (std::size_t n; (n = fread(buf.data(), 1, buf.size(), p)) > 0;) out.append(buf.data(), n);
  pclose(p);
  return out;
}

// Criterion 7: the budget was never hit, verdicts do not depend on the seed,
// and fixed-seed output is byte-identical across executions.
Outcome termination_and_determinism(const std::string& self) {
  Outcome o;
  o.require(corpus_stats.decisions > 0 && corpus_stats.over_budget == 0,
            std::to_string(corpus_stats.over_budget) + " decisions exceeded the budget");

  const auto formulas = corpus();
  std::size_t confluent = 0, checked = 0;
  for (std::size_t n = 0; n < formulas.size(); n += 5) {
    for (const auto& cal : calculi()) {
      const Verdict base = decide(formulas[n], cal).verdict;
      bool same = true;
      for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        ExpandOptions opts;
        opts.seed = seed;
        same = decide(formulas[n], cal, opts).verdict == base && same;
      }
      o.require(same, to_string(formulas[n]) + " in " + cal.name + ": verdict depends on the seed");
      confluent += same;
      ++checked;
    }
  }

  const std::string a = run_self(self);
  const std::string b = run_self(self);
  o.require(!a.empty(), "could not re-run the acceptance binary");
  o.require(a == b, "fixed-seed transcripts differ between executions");
  std::ostringstream s;
  s << corpus_stats.decisions << " decisions within budget (largest branch " << corpus_stats.max_firings
    << " entries), " << confluent << "/" << checked << " verdicts equal under 5 seeds, transcripts of " << a.size()
    << " bytes identical";
  o.summary = s.str();
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1 && std::string(argv[1]) == "--digest") {
    std::cout << digest();
    return 0;
  }
  const std::string self = std::filesystem::read_symlink("/proc/self/exe").string();
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"basic calculus proof and its closing pair", basic_proof},
      {"loop check is what makes the transitive calculus stop", loop_check_needed},
      {"extraction, clusters, bulldozing and class check", pipeline},
      {"axiom matrix", axiom_matrix},
      {"random formulas against the oracle and certificates", oracle_cross_validation},
      {"invariant audits on every branch and countermodel", lemma_audits},
      {"termination and determinism", [&] { return termination_and_determinism(self); }},
  };
  bool all = true;
  for (std::size_t n = 0; n < criteria.size(); ++n) {
    Outcome o;
    try {
      o = criteria[n].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.notes.push_back(std::string("exception: ") + e.what());
    }
    all = all && o.pass;
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << n + 1 << ". " << criteria[n].first;
    if (!o.summary.empty()) std::cout << " - " << o.summary;
    std::cout << '\n';
    for (const auto& note : o.notes) std::cout << "       " << note << '\n';
    std::cout.flush();
  }
  return all ? 0 : 1;
}
