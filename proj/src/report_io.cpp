#include "cantorplane/report_io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cantorplane {

namespace {

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << text;
}

}  // namespace

std::string points_csv(const CantorScheme& s) {
  std::ostringstream os;
  os << "support;sx;sy;ell\n";
  for (const auto& [d, n] : s.nodes)
    os << support_string(d) << ';' << n.sigma.x.str() << ';' << n.sigma.y.str() << ';' << n.ell << '\n';
  return os.str();
}

std::string points_decimal_csv(const CantorScheme& s) {
  std::ostringstream os;
  os << "support;sx;sy;ell\n";
  for (const auto& [d, n] : s.nodes)
    os << support_string(d) << ';' << n.sigma.x.decimal(40) << ';' << n.sigma.y.decimal(40) << ';' << n.ell << '\n';
  return os.str();
}

std::string chain_jsonl(const ChainResult& c) {
  std::string out;
  for (const auto& rec : c.log) out += rec.dump() + "\n";
  return out;
}

void write_partial_chain(const ChainResult& c, const std::string& dir) {
  std::filesystem::create_directories(dir);
  std::filesystem::path base(dir);
  write_file(base / "chain_partial.jsonl", chain_jsonl(c));
  write_file(base / "condition_partial.json", c.final().to_json().dump(2) + "\n");
}

void write_artifacts(const RunResult& res, const RunConfig& cfg, const std::string& dir) {
  std::filesystem::create_directories(dir);
  std::filesystem::path base(dir);
  write_file(base / "report.json", res.report_json(cfg).dump(2) + "\n");
  std::vector<RatSegment> segs = segment_prefix(cfg, res.stages);
  for (const auto& st : res.stages) {
    std::string i = std::to_string(st.id);
    write_file(base / ("stage_" + i + ".json"), st.to_json().dump(2) + "\n");
    write_file(base / ("stage_" + i + ".svg"), stage_svg(st, segs));
    if (!st.scheme_branch()) continue;
    write_file(base / ("chain_" + i + ".jsonl"), chain_jsonl(st.chain));
    write_file(base / ("points_" + i + ".csv"), points_csv(st.scheme));
    write_file(base / ("points_" + i + "_decimal.csv"), points_decimal_csv(st.scheme));
  }
}

}  // namespace cantorplane
