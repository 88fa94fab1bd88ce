#include "majorbn/reference.hpp"

#include <array>
#include <set>

namespace majorbn {

namespace {

// Majors, in state order.
constexpr int kMajorCount = 5;
const char* const kMajors[kMajorCount] = {
    "math_physics", "experimental_sciences", "human_sciences",
    "technical_vocational", "work_knowledge",
};

constexpr std::array<double, kMajorCount> kMajorPrior = {0.20, 0.26, 0.24,
                                                         0.17, 0.13};

// Every factor answer concentrates on a baseline level. Factors that carry
// signal move `kTargetMass` of it to a major-specific level; the other
// levels in the factor's support keep a small floor so no answer is fully
// diagnostic. Factors without signal leak `kLeakMass` to one adjacent
// level. Keeping rows this peaked keeps full-evidence rejection sampling
// viable at the sample counts used in the experiments.
constexpr double kTargetMass = 0.45;
constexpr double kSupportFloor = 0.04;
constexpr double kLeakMass = 0.005;

struct FactorSpec {
  const char* name;
  int baseline;                          // quad level 0..3
  std::array<int, kMajorCount> target;   // -1 = stays at baseline
  int leak;                              // leak level when no major deviates
};

// Targets use quad levels 0=very_low 1=low 2=much 3=very_much; majors are
// ordered as in kMajors.
constexpr FactorSpec kFactors[] = {
    {"high_school_score", 2, {3, 3, -1, 1, 1}, -1},
    {"middle_school_score", 2, {-1, -1, -1, -1, -1}, 1},
    {"not_come_score", 1, {-1, -1, -1, -1, -1}, 0},
    {"university", 2, {-1, -1, -1, -1, -1}, 3},
    {"parent_major", 1, {3, 2, -1, -1, 0}, -1},
    {"parent_guide", 2, {-1, -1, -1, -1, -1}, 3},
    {"teachers_guide", 2, {-1, -1, -1, -1, -1}, 1},
    {"manager_guide", 1, {-1, -1, -1, -1, -1}, 2},
    {"adviser_guide", 2, {-1, -1, -1, -1, -1}, 3},
    {"firend_advise", 1, {-1, -1, -1, -1, -1}, 2},
    {"weekly_plan", 1, {-1, -1, -1, -1, -1}, 0},
    {"kinfolk_major", 1, {-1, -1, -1, -1, -1}, 2},
    {"job", 2, {3, -1, 1, 3, -1}, -1},
    {"sociaty_requirement", 2, {-1, -1, -1, -1, -1}, 1},
    {"sociaty_lookout", 2, {-1, -1, -1, -1, -1}, 1},
    {"social_position", 2, {3, 3, -1, -1, 1}, -1},
    {"salary", 2, {-1, 3, 1, 3, -1}, -1},
    {"tendency", 2, {3, 3, 1, -1, 1}, -1},
};

std::vector<double> factor_row(const FactorSpec& spec, int major) {
  std::set<int> support;
  for (int target : spec.target)
    if (target >= 0) support.insert(target);
  const bool informative = !support.empty();
  if (!informative) support.insert(spec.leak);

  std::vector<double> row(quad_scale::kCardinality, 0.0);
  const int target = spec.target[major];
  double remainder = 1.0;
  for (int level : support) {
    double mass = kLeakMass;
    if (informative)
      mass = level == target ? kTargetMass : kSupportFloor;
    row[level] = mass;
    remainder -= mass;
  }
  row[spec.baseline] += remainder;
  return row;
}

}  // namespace

Network reference_network() {
  std::vector<Variable> variables;
  std::vector<Edge> edges;
  std::vector<Cpt> cpts;

  Variable major;
  major.name = kReferenceTarget;
  for (const char* state : kMajors) major.states.push_back(state);
  variables.push_back(std::move(major));

  Cpt prior;
  prior.child = 0;
  prior.rows = {{kMajorPrior.begin(), kMajorPrior.end()}};
  cpts.push_back(std::move(prior));

  for (const FactorSpec& spec : kFactors) {
    Variable factor;
    factor.name = spec.name;
    factor.states = quad_scale::states();
    const int child = static_cast<int>(variables.size());
    variables.push_back(std::move(factor));

    edges.emplace_back(kReferenceTarget, spec.name);
    Cpt cpt;
    cpt.child = child;
    cpt.parents = {0};
    for (int m = 0; m < kMajorCount; ++m)
      cpt.rows.push_back(factor_row(spec, m));
    cpts.push_back(std::move(cpt));
  }

  return Network::build(std::move(variables), edges, std::move(cpts),
                        "reference_major");
}

}  // namespace majorbn
