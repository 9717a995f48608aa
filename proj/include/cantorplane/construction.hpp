#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cantorplane/density.hpp"

namespace cantorplane {

struct StageSpec {
  std::string name;
  RegionPair pair;
  std::optional<Point> root;
};

struct RunConfig {
  std::vector<StageSpec> stages;
  std::vector<RatSegment> segments;
  int depth = 4;
  int bound = 8;
  std::size_t mA = 20;
  long budget = 4096;
  int samples = 10;

  static RunConfig from_json(const json& j);
  json to_json() const;
};

struct StageResult {
  int id = 0;
  std::string name;
  RegionPair pair;
  std::optional<RatSegment> segment;
  CantorScheme scheme;
  ChainResult chain;
  // |dom q| when each support entered the domain.
  std::map<Support, std::size_t> entered_at;
  json to_json() const;
  bool scheme_branch() const { return !segment.has_value(); }
};

// Segments of Q known when a stage starts: configured ones and earlier segment stages.
std::vector<RatSegment> segment_prefix(const RunConfig& cfg, const std::vector<StageResult>& done);

std::vector<Requirement> stage_requirements(const StageContext& ctx, const StageSpec& spec, const RunConfig& cfg,
                                            const std::vector<RatSegment>& prefix);

StageResult run_stage(StageContext& ctx, const StageSpec& spec, const RunConfig& cfg,
                      const std::vector<RatSegment>& prefix);

// O(x, eps, G) with each collar shrunk by its tail ball so that membership
// is sound for the completed Cantor sets.
struct BasicNeighborhood {
  Point x;
  Rat eps;
  std::vector<int> G;

  bool contains_closed_ball(const Ball& b, const StageContext& ctx) const;
  bool contains(const Point& z, const StageContext& ctx) const;
};

struct Report {
  std::string name;
  long checks = 0;
  long failures = 0;
  json entries = json::array();
  void fail(json entry);
  void pass(json entry);
  bool ok() const { return failures == 0; }
  json to_json() const;
};

Report verify_star_propagation(const StageContext& ctx, const StageResult& st);
// The (*) recipe at x for stage alpha, given the domain at the condition where
// all stages of P had entered F.
json star_at(const StageContext& ctx, int alpha, const Point& x, const std::set<int>& priors,
             const std::set<Support>& dom_p, bool& ok);
Report verify_finite_meets(const StageContext& ctx, const StageResult& alpha, int beta);
Report verify_segment_meets(const StageResult& alpha);
Report verify_boundary(const StageContext& ctx, const StageResult& st, int samples);
Report verify_no_interference(const StageContext& ctx, int alpha, int beta);
json segment_euclidean(const CantorScheme& s, const RatSegment& Q, bool& ok);
Report verify_segment_euclidean(const StageContext& ctx, const StageResult& st, const std::vector<RatSegment>& Qs);
Report verify_A_exemptions(const StageContext& ctx, const StageResult& st);
Report verify_chain(const StageContext& ctx, const StageResult& st);

struct RunResult {
  StageContext ctx;
  std::vector<StageResult> stages;
  std::vector<Report> reports;
  bool ok() const;
  json report_json(const RunConfig& cfg) const;
};

// Runs all stages and verifications; throws ChainBudgetExhausted with the
// partial chain when a search schedule runs out.
RunResult run_construction(const RunConfig& cfg);

}  // namespace cantorplane
