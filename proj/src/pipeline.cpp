#include "chowlift/pipeline.hpp"

#include <chrono>
#include <sstream>

#include "chowlift/errors.hpp"
#include "chowlift/rng.hpp"

namespace chowlift {

BuiltVariety build_variety(const VarietySpec& spec) {
  switch (spec.kind) {
    case VarietySpec::Kind::ProjectiveSpace: {
      DatumPtr p = projective_space(spec.n);
      return BuiltVariety{p, standard_ck(p), {}, std::nullopt};
    }
    case VarietySpec::Kind::Product: {
      const BuiltVariety left = build_variety(spec.children[0]);
      // Equal factor specs share one datum so the swap action stays
      // well-defined on the product.
      const BuiltVariety right = spec.children[0] == spec.children[1]
                                     ? left
                                     : build_variety(spec.children[1]);
      DatumPtr prod = product(left.datum, right.datum);
      return BuiltVariety{prod, ck_tensor(left.ck, right.ck, prod), {},
                          std::nullopt};
    }
    case VarietySpec::Kind::Quotient: {
      const BuiltVariety child = build_variety(spec.children[0]);
      const GroupActionDatum action = spec.action == "swap"
                                          ? swap_action(child.datum)
                                          : trivial_action(child.datum);
      QuotientResult q = quotient(action);
      return BuiltVariety{q.datum, ck_quotient(child.ck, q.projection), {},
                          std::nullopt};
    }
    case VarietySpec::Kind::Blowup: {
      const BuiltVariety child = build_variety(spec.children[0]);
      BlowupTower tower =
          blow_up_points(child.datum, spec.num_points, spec.multiplier);
      BuiltVariety built;
      built.datum = tower.top;
      built.ck = tower.lift(child.ck);
      built.stages = child.stages;
      built.stages.insert(built.stages.end(), tower.stages.begin(),
                          tower.stages.end());
      built.ck_below =
          child.stages.empty() ? child.ck : child.ck_below;
      return built;
    }
  }
  throw ConfigError("unreachable variety kind");
}

namespace {

CheckResult run_task(const BuiltVariety& built, const RunConfig& config,
                     Task task) {
  const std::string name = task_name(task);
  auto from_report = [&](const VerificationReport& report) {
    return CheckResult{name, report.overall, report.first_failure()};
  };
  switch (task) {
    case Task::VerifyCK:
      return from_report(verify_ck(built.ck));
    case Task::Poincare:
      return from_report(check_poincare(built.ck));
    case Task::MurreB:
      return from_report(check_B(built.ck));
    case Task::MurreBprime:
      return from_report(check_Bprime(built.ck));
    case Task::MurreC: {
      std::vector<CKDecomposition> variants{built.ck};
      if (!built.stages.empty()) {
        // Second tau route: doubly exceptional terms skewed to tau1 and no
        // symmetrization; a genuinely different construction path.
        CKDecomposition alt = *built.ck_below;
        for (const auto& stage : built.stages)
          alt = lift_ck(alt, stage, TauRoute::SkewLeft, false);
        variants.push_back(std::move(alt));
      }
      return from_report(check_C(variants));
    }
    case Task::MurreD:
      return from_report(check_D_cellular(built.ck));
    case Task::Lift: {
      if (built.stages.empty())
        return CheckResult{name, true, "no blow-up stages"};
      CKDecomposition ck = *built.ck_below;
      for (std::size_t s = 0; s < built.stages.size(); ++s) {
        ck = lift_ck(ck, built.stages[s]);
        const VerificationReport report = verify_ck(ck);
        if (!report.overall)
          return CheckResult{name, false,
                             "stage " + std::to_string(s) + ": " +
                                 report.first_failure()};
      }
      return CheckResult{name, true, ""};
    }
    case Task::Blowdown: {
      if (built.stages.empty())
        return CheckResult{name, true, "no blow-up stages"};
      CKDecomposition ck = built.ck;
      for (std::size_t s = built.stages.size(); s-- > 0;) {
        ck = blowdown_ck(ck, built.stages[s]);
        const VerificationReport report = verify_ck(ck);
        if (!report.overall)
          return CheckResult{name, false,
                             "stage " + std::to_string(s) + ": " +
                                 report.first_failure()};
      }
      return CheckResult{name, true, ""};
    }
    case Task::Roundtrip: {
      if (built.stages.empty())
        return CheckResult{name, true, "no blow-up stages"};
      CKDecomposition ck = built.ck;
      for (std::size_t s = built.stages.size(); s-- > 0;)
        ck = blowdown_ck(ck, built.stages[s]);
      const auto& expected = built.ck_below->projectors;
      for (std::size_t i = 0; i < expected.size(); ++i)
        if (!(ck.projectors[i] == expected[i]))
          return CheckResult{name, false,
                             "projector " + std::to_string(i) +
                                 " does not survive the round trip"};
      return CheckResult{name, true, ""};
    }
    case Task::OracleFuzz: {
      SeededRng rng(config.seed);
      const DatumPtr& x = built.datum;
      const ComposeOracle oracle(x, x, x);
      const int d = x->dimension();
      for (int n = 0; n < config.fuzz_cases; ++n) {
        const int c1 = static_cast<int>(rng.uniform(2 * d + 1));
        const int c2 = static_cast<int>(rng.uniform(2 * d + 1));
        const Correspondence right = rng.random_correspondence(x, x, c1);
        const Correspondence left = rng.random_correspondence(x, x, c2);
        if (!(compose(left, right) == oracle.compose(left, right)))
          return CheckResult{name, false,
                             "composition disagrees with the oracle on case " +
                                 std::to_string(n)};
      }
      return CheckResult{name, true,
                         std::to_string(config.fuzz_cases) + " cases"};
    }
  }
  return CheckResult{name, false, "unknown task"};
}

std::string sanitize(const std::string& text) {
  std::string out;
  for (char c : text) out.push_back(c == '\n' ? ';' : c);
  return out.empty() ? "-" : out;
}

std::string datum_summary(const DatumPtr& datum, const std::string& indent) {
  std::ostringstream os;
  os << indent << "name = " << datum->name() << "\n";
  os << indent << "dimension = " << datum->dimension() << "\n";
  os << indent << "dims = [";
  for (int i = 0; i <= datum->dimension(); ++i)
    os << (i ? ", " : "") << datum->dim_ch(i);
  os << "]\n";
  os << indent << "cellular = " << (datum->cellular() ? "true" : "false")
     << "\n";
  os << indent << "kunneth = " << (datum->has_kunneth() ? "present" : "absent")
     << "\n";
  return os.str();
}

std::string render_machine(const RunConfig& config, const DatumPtr& datum,
                           const std::vector<CheckResult>& results) {
  std::ostringstream os;
  os << "report {\n";
  os << "  config {\n" << config_echo(config) << "  }\n";
  os << "  datum {\n" << datum_summary(datum, "    ") << "  }\n";
  os << "  checks {\n";
  for (const auto& r : results)
    os << "    check { name = " << r.name
       << "; status = " << (r.pass ? "pass" : "fail")
       << "; witness = " << sanitize(r.witness) << " }\n";
  os << "  }\n";
  // Byte-identical reports for equal config and seed take precedence over
  // wall-clock timing; the text format carries the measured value instead.
  os << "  timing {\n    total_ms = suppressed\n  }\n";
  os << "}\n";
  return os.str();
}

std::string render_text(const RunConfig& config, const DatumPtr& datum,
                        const std::vector<CheckResult>& results,
                        double total_ms) {
  std::ostringstream os;
  os << "variety: " << config.variety.str() << "\n";
  os << "datum: " << datum->name() << ", dimension " << datum->dimension()
     << ", CH dims [";
  for (int i = 0; i <= datum->dimension(); ++i)
    os << (i ? ", " : "") << datum->dim_ch(i);
  os << "]\n";
  std::size_t passed = 0;
  for (const auto& r : results) {
    os << "check " << r.name << ": " << (r.pass ? "PASS" : "FAIL");
    if (!r.witness.empty()) os << "  (" << sanitize(r.witness) << ")";
    os << "\n";
    if (r.pass) ++passed;
  }
  os << "total: " << passed << "/" << results.size() << " passed in "
     << static_cast<long>(total_ms) << " ms\n";
  return os.str();
}

}  // namespace

RunResult run(const RunConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<CheckResult> results;
  DatumPtr datum;

  try {
    const BuiltVariety built = build_variety(config.variety);
    datum = built.datum;
    for (Task task : config.tasks) {
      try {
        results.push_back(run_task(built, config, task));
      } catch (const ChowError& e) {
        results.push_back(CheckResult{task_name(task), false, e.what()});
      }
    }
  } catch (const ChowError& e) {
    results.push_back(CheckResult{"build", false, e.what()});
  }

  bool all_pass = true;
  for (const auto& r : results) all_pass = all_pass && r.pass;

  const double total_ms =
      std::chrono::duration<double, std::milli>(
          std::chrono::steady_clock::now() - start)
          .count();

  RunResult out;
  out.exit_code = all_pass ? 0 : 1;
  if (!datum) {
    // Build failed before a datum existed; emit the failure without a
    // datum block.
    std::ostringstream os;
    if (config.format == OutputFormat::Machine) {
      os << "report {\n  config {\n"
         << config_echo(config) << "  }\n  checks {\n";
      for (const auto& r : results)
        os << "    check { name = " << r.name << "; status = fail; witness = "
           << sanitize(r.witness) << " }\n";
      os << "  }\n  timing {\n    total_ms = suppressed\n  }\n}\n";
    } else {
      for (const auto& r : results)
        os << "check " << r.name << ": FAIL  (" << sanitize(r.witness)
           << ")\n";
    }
    out.report = os.str();
    return out;
  }
  out.report = config.format == OutputFormat::Machine
                   ? render_machine(config, datum, results)
                   : render_text(config, datum, results, total_ms);
  return out;
}

std::string describe(const RunConfig& config) {
  const BuiltVariety built = build_variety(config.variety);
  std::ostringstream os;
  os << "config {\n" << config_echo(config) << "}\n";
  os << "datum {\n" << datum_summary(built.datum, "  ") << "}\n";
  os << "projectors = " << built.ck.projectors.size() << "\n";
  os << "blowup_stages = " << built.stages.size() << "\n";
  return os.str();
}

}  // namespace chowlift
