#include "ivckind/frontend.hpp"

#include <deque>

namespace ivck {

namespace {
void mentioned_vars(const Expr& e, std::set<std::string>* out) {
  if (e.k == Expr::K::Var) out->insert(e.name);
  for (const auto& a : e.args) mentioned_vars(*a, out);
}
}  // namespace

std::set<std::string> slice_backward(const Program& p, const std::string& root) {
  const Node& n = p.main_node();
  if (!n.find_equation(root))
    fail(DiagKind::UnresolvedIdentifier, "slice root '" + root + "' has no defining equation");

  std::set<std::string> slice;
  std::deque<std::string> work{root};
  while (!work.empty()) {
    std::string v = work.front();
    work.pop_front();
    if (!slice.insert(v).second) continue;
    std::set<std::string> mentioned;
    mentioned_vars(*n.find_equation(v)->rhs, &mentioned);
    for (const auto& w : mentioned)
      if (n.find_equation(w) && !slice.count(w)) work.push_back(w);
  }
  return slice;
}

std::set<std::string> resolve_ivc_annotations(const Program& p) {
  const Node& n = p.main_node();
  std::set<std::string> out;
  if (n.has_ivc_annotation) {
    for (const auto& v : n.ivc_annotation) {
      if (!n.find_equation(v))
        fail(DiagKind::BadAnnotation, "--%IVC names variable '" + v + "' with no defining equation");
      out.insert(v);
    }
  } else {
    for (const auto& eq : n.equations) out.insert(eq.target);
  }
  return out;
}

}  // namespace ivck
