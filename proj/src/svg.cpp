#include <algorithm>
#include <cstdio>
#include <sstream>

#include "cantorplane/report_io.hpp"

namespace cantorplane {

namespace {

const char* kStrokes[] = {"#1b4f72", "#b03a2e", "#1e8449", "#7d3c98", "#b9770e", "#117a65", "#515a5a"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string circle_path(double cx, double cy, double r) {
  return "M" + num(cx - r) + "," + num(-cy) + "a" + num(r) + "," + num(r) + " 0 1,0 " + num(2 * r) + ",0a" + num(r) +
         "," + num(r) + " 0 1,0 " + num(-2 * r) + ",0Z";
}

struct Box {
  double x0, y0, x1, y1;
  void grow(double x, double y, double r) {
    x0 = std::min(x0, x - r);
    y0 = std::min(y0, y - r);
    x1 = std::max(x1, x + r);
    y1 = std::max(y1, y + r);
  }
};

}  // namespace

std::string stage_svg(const StageResult& st, const std::vector<RatSegment>& segments) {
  Box box{1e300, 1e300, -1e300, -1e300};
  if (st.segment) {
    box.grow(st.segment->a.x.get_d(), st.segment->a.y.get_d(), 0);
    box.grow(st.segment->b.x.get_d(), st.segment->b.y.get_d(), 0);
  }
  for (const auto& [d, n] : st.scheme.nodes)
    box.grow(n.sigma.x.to_double(), n.sigma.y.to_double(), W_ball(n).radius.get_d());
  if (box.x0 > box.x1) box = {-1, -1, 1, 1};
  double pad = 0.05 * std::max({box.x1 - box.x0, box.y1 - box.y0, 1e-9});
  box = {box.x0 - pad, box.y0 - pad, box.x1 + pad, box.y1 + pad};

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" viewBox=\"" << num(box.x0) << ' '
     << num(-box.y1) << ' ' << num(box.x1 - box.x0) << ' ' << num(box.y1 - box.y0) << "\">\n";
  os << "<title>stage " << st.id << " " << st.name << "</title>\n";
  os << "<g fill=\"none\" vector-effect=\"non-scaling-stroke\">\n";
  for (const auto& [d, n] : st.scheme.nodes) {
    const auto& kids = st.scheme.children(d);
    if (kids.empty()) continue;
    std::string path = circle_path(n.sigma.x.to_double(), n.sigma.y.to_double(), U_ball(n).radius.get_d());
    for (const Support& e : kids) {
      const SchemeNode& c = st.scheme.at(e);
      path += circle_path(c.sigma.x.to_double(), c.sigma.y.to_double(), W_ball(c).radius.get_d());
    }
    os << "<path d=\"" << path << "\" fill=\"#f5b041\" fill-opacity=\"0.25\" fill-rule=\"evenodd\"/>\n";
  }
  for (const auto& [d, n] : st.scheme.nodes) {
    const char* stroke = kStrokes[std::min<std::size_t>(d.size(), std::size(kStrokes) - 1)];
    os << "<circle cx=\"" << num(n.sigma.x.to_double()) << "\" cy=\"" << num(-n.sigma.y.to_double()) << "\" r=\""
       << num(W_ball(n).radius.get_d()) << "\" stroke=\"" << stroke
       << "\" stroke-width=\"1\" vector-effect=\"non-scaling-stroke\"/>\n";
  }
  std::vector<RatSegment> lines = segments;
  if (st.segment) lines.push_back(*st.segment);
  for (const RatSegment& s : lines)
    os << "<line x1=\"" << num(s.a.x.get_d()) << "\" y1=\"" << num(-s.a.y.get_d()) << "\" x2=\"" << num(s.b.x.get_d())
       << "\" y2=\"" << num(-s.b.y.get_d()) << "\" stroke=\"#000000\" stroke-width=\"1.5\" vector-effect=\"non-scaling-stroke\"/>\n";
  os << "</g>\n</svg>\n";
  return os.str();
}

}  // namespace cantorplane
