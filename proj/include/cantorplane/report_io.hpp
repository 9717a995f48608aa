#pragma once

#include <string>

#include "cantorplane/construction.hpp"

namespace cantorplane {

// support;sx;sy;ell with exact scalar strings.
std::string points_csv(const CantorScheme& s);
// Same rows with 40-digit decimal coordinates.
std::string points_decimal_csv(const CantorScheme& s);
std::string chain_jsonl(const ChainResult& c);

std::string stage_svg(const StageResult& st, const std::vector<RatSegment>& segments);

// Writes report.json and per-stage JSON, JSONL, CSV and SVG files into dir.
void write_artifacts(const RunResult& res, const RunConfig& cfg, const std::string& dir);
void write_partial_chain(const ChainResult& c, const std::string& dir);

}  // namespace cantorplane
