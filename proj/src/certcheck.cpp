#include "strukt/certcheck.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "json_support.hpp"
#include "strukt/error.hpp"

namespace strukt {

using detail::json;

bool CheckResult::has(const std::string& id) const {
  return std::any_of(reasons.begin(), reasons.end(), [&](const Reason& r) { return r.id == id; });
}

std::vector<std::string> CheckResult::ids() const {
  std::vector<std::string> out;
  for (const Reason& r : reasons) out.push_back(r.id);
  return out;
}

namespace {

void add(CheckResult& out, const std::string& id, const std::string& where = "") { out.reasons.push_back({id, where}); }

void absorb(CheckResult& out, const CheckResult& part, const std::string& where) {
  for (const Reason& r : part.reasons) out.reasons.push_back({r.id, r.where.empty() ? where : where + " / " + r.where});
  for (const std::string& n : part.notes) out.notes.push_back(n);
}

bool contains(const std::vector<Vertex>& vs, Vertex v) { return std::find(vs.begin(), vs.end(), v) != vs.end(); }

bool distinct(std::vector<Vertex> vs) {
  std::sort(vs.begin(), vs.end());
  return std::adjacent_find(vs.begin(), vs.end()) == vs.end();
}

bool is_rotation(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
  if (a.size() != b.size()) return false;
  if (a.empty()) return true;
  for (std::size_t r = 0; r < a.size(); ++r) {
    bool ok = true;
    for (std::size_t k = 0; k < a.size() && ok; ++k) ok = a[(r + k) % a.size()] == b[k];
    if (ok) return true;
  }
  return false;
}

bool cyclic_match(const std::vector<Vertex>& a, const std::vector<Vertex>& b, bool reflect) {
  if (is_rotation(a, b)) return true;
  return reflect && is_rotation(a, std::vector<Vertex>(b.rbegin(), b.rend()));
}

// `sub` appears along the closed walk in order, starting anywhere.
bool along_walk(const std::vector<Vertex>& walk, const std::vector<Vertex>& sub, bool reflect) {
  if (sub.empty()) return true;
  if (walk.empty()) return false;
  auto forward = [&](const std::vector<Vertex>& s) {
    for (std::size_t start = 0; start < walk.size(); ++start) {
      if (walk[start] != s[0]) continue;
      std::size_t k = 1;
      for (std::size_t i = 1; i < walk.size() && k < s.size(); ++i)
        if (walk[(start + i) % walk.size()] == s[k]) ++k;
      if (k == s.size()) return true;
    }
    return false;
  };
  return forward(sub) || (reflect && forward(std::vector<Vertex>(sub.rbegin(), sub.rend())));
}

std::vector<Vertex> common_vertices(const Graph& a, const Graph& b) {
  std::vector<Vertex> out;
  std::set_intersection(a.vertices().begin(), a.vertices().end(), b.vertices().begin(), b.vertices().end(),
                        std::back_inserter(out));
  return out;
}

// Faces of a (possibly empty) embedding; nullopt when it cannot be traced.
std::optional<std::vector<FaceWalk>> faces_of(const Embedding& e) {
  if (e.graph().empty()) return std::vector<FaceWalk>{};
  if (!is_connected(e.graph())) return std::nullopt;
  return trace_faces(e);
}

std::string vertex_at(Vertex v) { return "vertex " + std::to_string(v); }

}  // namespace

// ---------------------------------------------------------------- vortices

namespace {

void common_vortex_checks(CheckResult& out, const Vortex& v) {
  for (const std::string& id : path_decomposition_violations(v.decomposition, v.graph)) add(out, id);
  const auto& bags = v.decomposition.bags;
  if (bags.size() != v.boundary.size()) add(out, "bag count");
  bool ok = distinct(v.boundary);
  for (Vertex b : v.boundary) ok = ok && v.graph.has_vertex(b);
  if (!ok) add(out, "boundary vertex");
  for (std::size_t j = 0; j < std::min(bags.size(), v.boundary.size()); ++j) {
    if (!contains(bags[j], v.boundary[j])) {
      add(out, "boundary-bag membership", "bag " + std::to_string(j));
      break;
    }
  }
}

}  // namespace

CheckResult check_vortex(const Vortex& v, int p) {
  CheckResult out;
  common_vortex_checks(out, v);
  if (v.decomposition.width() > p) add(out, "width");
  return out;
}

CheckResult check_standard_vortex(const Vortex& v, int p) {
  CheckResult out;
  common_vortex_checks(out, v);
  const auto& bags = v.decomposition.bags;
  for (std::size_t i = 0; i < bags.size(); ++i) {
    std::set<Vertex> bi(bags[i].begin(), bags[i].end());
    for (std::size_t j = i + 1; j < bags.size(); ++j) {
      std::set<Vertex> bj(bags[j].begin(), bags[j].end());
      std::vector<Vertex> both;
      std::set_intersection(bi.begin(), bi.end(), bj.begin(), bj.end(), std::back_inserter(both));
      if (static_cast<int>(both.size()) > p) {
        add(out, "pairwise intersection", "bags " + std::to_string(i) + "," + std::to_string(j));
        return out;
      }
    }
  }
  return out;
}

Graph Outgrowth::graph() const {
  Graph g = base.graph();
  for (const Vortex& v : vortices) g = graph_union(g, v.graph);
  return g;
}

CheckResult check_outgrowth(const Outgrowth& o, int k, int p, bool strict) {
  CheckResult out;
  const Graph& g0 = o.base.graph();
  if (static_cast<int>(o.vortices.size()) > k) add(out, "vortex count");
  auto faces = faces_of(o.base);
  if (!faces) add(out, "base embedding");
  std::set<int> used;
  for (std::size_t i = 0; i < o.vortices.size(); ++i) {
    const Vortex& v = o.vortices[i];
    const std::string at = "vortex " + std::to_string(i);
    static const std::vector<Vertex> none;
    const auto& face = i < o.faces.size() ? o.faces[i] : none;
    if (face.empty()) {
      if (!v.boundary.empty()) add(out, "face missing", at);
    } else if (faces) {
      int idx = find_face(*faces, face, true);
      if (idx < 0) {
        add(out, "face missing", at);
      } else if (!used.insert(idx).second) {
        add(out, "distinct faces", at);
      }
      if (!along_walk(face, v.boundary, !strict)) add(out, "attachment order", at);
    }
    std::vector<Vertex> shared = common_vertices(g0, v.graph);
    std::vector<Vertex> b = v.boundary;
    std::sort(b.begin(), b.end());
    if (shared != b) add(out, "attachment", at);
    for (const Edge& e : v.graph.edges()) {
      if (g0.has_edge(e.u, e.v)) {
        add(out, "edge disjointness", at);
        break;
      }
    }
    for (std::size_t j = i + 1; j < o.vortices.size(); ++j) {
      if (!common_vertices(v.graph, o.vortices[j].graph).empty())
        add(out, "vortex disjointness", at + ", vortex " + std::to_string(j));
    }
    absorb(out, check_vortex(v, p), at);
  }
  return out;
}

// ---------------------------------------------------------------- basic graphs and patches

CheckResult check_basic(const BasicWitness& w, const BasicParams& params) {
  CheckResult out;
  const Graph& g = w.disk.graph();
  bool disk_ok = true;
  if (g.empty()) {
    if (!w.disk.boundary.empty()) add(out, "unknown vertex");
  } else {
    for (const std::string& id : disk_violations(w.disk)) {
      add(out, id);
      disk_ok = false;
    }
  }
  for (const auto* set : {&w.S, &w.A}) {
    for (Vertex v : *set) {
      if (!g.has_vertex(v)) {
        add(out, "unknown vertex", vertex_at(v));
        disk_ok = false;
        break;
      }
    }
  }
  if (static_cast<int>(w.disk.boundary.size()) > params.n) add(out, "boundary size");
  if (params.t && static_cast<int>(w.S.size()) >= *params.t) add(out, "S size");
  if (static_cast<int>(w.A.size()) > params.a) add(out, "apex size");
  if (!params.t || !disk_ok || g.empty()) return out;
  for (Vertex v : high_degree_vertices(g, params.D)) {
    if (contains(w.A, v)) continue;
    bool near = std::any_of(w.S.begin(), w.S.end(), [&](Vertex s) { return radial_distance(w.disk, v, s) <= params.m; });
    if (!near) {
      add(out, "far high-degree vertex", vertex_at(v));
      break;
    }
  }
  return out;
}

Graph PatchTree::graph() const {
  Graph g = root.disk.graph();
  for (const Pasting& p : pastings) g = graph_union(g, p.child.graph());
  return g;
}

namespace {

// One placement of a patch into a face of `faces`: shape checks, then the
// fresh-vertex check against `acc`, which grows by the patch.
void place_patch(CheckResult& out, const std::vector<FaceWalk>& faces, int outer, std::set<int>& used,
                 const std::vector<Vertex>& face, const PatchTree& child, Graph& acc, const std::string& at,
                 bool strict) {
  int idx = find_face(faces, face, true);
  if (idx < 0) {
    add(out, "face missing", at);
  } else if (idx == outer) {
    add(out, "outer face", at);
  } else {
    if (!faces[static_cast<std::size_t>(idx)].is_simple_cycle()) add(out, "face not bounded by a cycle", at);
    if (!used.insert(idx).second) add(out, "distinct faces", at);
  }
  const auto& cb = child.root.disk.boundary;
  if (strict ? cb != face : !cyclic_match(face, cb, true)) add(out, "boundary mismatch", at);
  Graph cg = child.graph();
  for (Vertex v : cg.vertices()) {
    if (!contains(face, v) && acc.has_vertex(v)) {
      add(out, "vertex clash", at + " / " + vertex_at(v));
      break;
    }
  }
  acc = graph_union(acc, cg);
}

}  // namespace

CheckResult check_patch(const PatchTree& t, const BasicParams& params, bool strict) {
  CheckResult out = check_basic(t.root, params);
  if (t.pastings.empty()) return out;
  std::vector<FaceWalk> faces;
  int outer = -1;
  if (!t.root.disk.graph().empty() && disk_violations(t.root.disk).empty()) {
    faces = trace_faces(t.root.disk.embedding);
    outer = find_face(faces, t.root.disk.outer_face.vertices);
  }
  std::set<int> used;
  Graph acc = t.root.disk.graph();
  for (std::size_t i = 0; i < t.pastings.size(); ++i) {
    const std::string at = "pasting " + std::to_string(i);
    place_patch(out, faces, outer, used, t.pastings[i].face, t.pastings[i].child, acc, at, strict);
    absorb(out, check_patch(t.pastings[i].child, params, strict), at);
  }
  return out;
}

CheckResult check_expansion(const Graph& gp, const Outgrowth& o, const std::vector<PatchPlacement>& patches,
                            const BasicParams& params, bool strict) {
  CheckResult out;
  auto faces = faces_of(o.base);
  if (!faces) {
    add(out, "base embedding");
    faces = std::vector<FaceWalk>{};
  }
  std::set<int> used;
  for (const auto& f : o.faces) {
    if (int idx = f.empty() ? -1 : find_face(*faces, f, true); idx >= 0) used.insert(idx);
  }
  Graph acc = o.base.graph();
  Graph vortices;
  for (const Vortex& v : o.vortices) vortices = graph_union(vortices, v.graph);
  Graph seen = graph_union(acc, vortices);
  for (std::size_t i = 0; i < patches.size(); ++i) {
    const std::string at = "patch " + std::to_string(i);
    place_patch(out, *faces, -1, used, patches[i].face, patches[i].patch, seen, at, strict);
    acc = graph_union(acc, patches[i].patch.graph());
    absorb(out, check_patch(patches[i].patch, params, strict), at);
  }
  for (std::size_t i = 0; i < o.vortices.size(); ++i) {
    if (!is_subgraph(o.vortices[i].graph, gp)) add(out, "vortex missing", "vortex " + std::to_string(i));
  }
  auto in_vortex = [&](const Edge& e) {
    return std::any_of(o.vortices.begin(), o.vortices.end(), [&](const Vortex& v) { return v.graph.has_edge(e.u, e.v); });
  };
  bool inside = true;
  for (Vertex v : gp.vertices()) inside = inside && (acc.has_vertex(v) || vortices.has_vertex(v));
  for (const Edge& e : gp.edges()) inside = inside && (acc.has_edge(e.u, e.v) || in_vortex(e));
  if (!inside) add(out, "subgraph");
  return out;
}

// ---------------------------------------------------------------- certificates

std::string case_name(CaseTag c) {
  switch (c) {
    case CaseTag::bounded_degree: return "bounded-degree";
    case CaseTag::nonembeddable_surface: return "nonembeddable-surface";
    case CaseTag::few_vortex_faces: return "few-vortex-faces";
  }
  return "";
}

CaseTag parse_case(const std::string& s) {
  for (CaseTag c : {CaseTag::bounded_degree, CaseTag::nonembeddable_surface, CaseTag::few_vortex_faces})
    if (case_name(c) == s) return c;
  throw ValidationError("unknown case tag: " + s);
}

namespace {

class SurfaceFacts {
 public:
  SurfaceFacts(const Graph& h, const SearchBudget& budget) : h_(h), budget_(budget) {}

  bool embeds(const Surface& s) {
    auto key = s.closed().name();
    if (auto it = embeds_.find(key); it != embeds_.end()) return it->second;
    return embeds_[key] = embeds_in(h_, s.closed(), budget_);
  }
  std::optional<int> mf_of(const Surface& s) {
    auto key = s.closed().name();
    if (auto it = mf_.find(key); it != mf_.end()) return it->second;
    return mf_[key] = mf(h_, s.closed(), budget_);
  }

 private:
  const Graph& h_;
  const SearchBudget& budget_;
  std::map<std::string, bool> embeds_;
  std::map<std::string, std::optional<int>> mf_;
};

void check_base_genus(CheckResult& out, const Outgrowth& o, const Surface& s) {
  const Graph& g0 = o.base.graph();
  if (g0.empty()) return;
  if (!is_connected(g0)) {
    add(out, "base embedding");
    return;
  }
  if (!fits_in(euler_genus(o.base), s.closed())) add(out, "base genus");
}

}  // namespace

CheckResult check_certificate(const StructureCertificate& c, const SearchBudget& budget) {
  CheckResult out;
  auto tv = tree_violations(c.tree);
  for (const std::string& m : tv) add(out, "tree", m);
  if (tv.empty() && compose(c.tree) != c.host) add(out, "composition");
  if (c.pieces.size() != c.tree.pieces.size()) {
    add(out, "piece count");
    return out;
  }
  const CertParams& q = c.params;
  SurfaceFacts facts(c.H, budget);
  for (std::size_t i = 0; i < c.pieces.size(); ++i) {
    const std::string at = "piece " + std::to_string(i);
    const PieceWitness& w = c.pieces[i];
    const Graph& gi = c.tree.pieces[i];
    CheckResult r;
    for (Vertex v : w.apex) {
      if (!gi.has_vertex(v)) {
        add(r, "unknown vertex", vertex_at(v));
        break;
      }
    }
    if (static_cast<int>(w.apex.size()) > q.a) add(r, "apex size");
    Graph gp = remove_vertices(gi, std::vector<Vertex>(w.apex.begin(), w.apex.end()));
    if (w.tag == CaseTag::bounded_degree) {
      if (!gp.empty() && gp.max_degree() > q.D) add(r, "degree bound");
      absorb(out, r, at);
      continue;
    }
    if (!w.surface || !w.outgrowth) {
      add(r, "missing witness");
      absorb(out, r, at);
      continue;
    }
    const Surface& s = *w.surface;
    const Outgrowth& o = *w.outgrowth;
    if (s.boundary_components > 0)
      r.notes.push_back(at + ": " + s.name() + " read as " + s.closed().name());
    absorb(r, check_outgrowth(o, q.k, q.p, c.strict), "");
    check_base_genus(r, o, s);
    if (w.tag == CaseTag::nonembeddable_surface) {
      if (o.graph() != gp) add(r, "outgrowth union");
      if (facts.embeds(s)) add(r, "H embeds in Σ");
      absorb(out, r, at);
      continue;
    }
    // few vortex faces
    if (!facts.embeds(s)) {
      add(r, "H does not embed in Σ");
      absorb(out, r, at);
      continue;
    }
    int mfs = *facts.mf_of(s);
    if (mfs < 2) add(r, "mf below 2");
    Graph g2 = o.graph();
    std::set<std::size_t> loud;
    bool outside = false;
    for (Vertex v : high_degree_vertices(g2, q.D)) {
      bool in_some = false;
      for (std::size_t j = 0; j < o.vortices.size(); ++j) {
        if (o.vortices[j].graph.has_vertex(v)) {
          loud.insert(j);
          in_some = true;
        }
      }
      outside = outside || !in_some;
    }
    if (outside) add(r, "high-degree vertex outside vortices");
    if (static_cast<int>(loud.size()) >= mfs) add(r, "too many high-degree vortices");
    BasicParams bp{q.n, facts.mf_of(Surface::sphere()), q.D, q.m, q.a};
    absorb(r, check_expansion(gp, o, w.patches, bp, c.strict), "");
    absorb(out, r, at);
  }
  return out;
}

// ---------------------------------------------------------------- json

namespace {

std::vector<Vertex> vertex_list(const json& j) {
  std::vector<Vertex> out;
  for (const auto& v : j) out.push_back(v.get<Vertex>());
  return out;
}

Embedding embedding_from(const json& j) { return parse_embedding(j.get<std::string>()); }

DiskGraph disk_from(const json& j) {
  detail::expect_keys(j, {"embedding", "outer_face", "boundary"}, "disk");
  DiskGraph d;
  d.embedding = embedding_from(j.at("embedding"));
  d.outer_face.vertices = vertex_list(j.at("outer_face"));
  d.boundary = vertex_list(j.value("boundary", json::array()));
  if (auto faces = faces_of(d.embedding)) {
    if (int idx = find_face(*faces, d.outer_face.vertices); idx >= 0) d.outer_face = (*faces)[static_cast<std::size_t>(idx)];
  }
  return d;
}

json disk_to(const DiskGraph& d) {
  return {{"embedding", format_embedding(d.embedding)}, {"outer_face", d.outer_face.vertices}, {"boundary", d.boundary}};
}

PatchTree patch_from(const json& j) {
  detail::expect_keys(j, {"disk", "S", "A", "pastings"}, "patch");
  PatchTree t;
  t.root.disk = disk_from(j.at("disk"));
  t.root.S = vertex_list(j.value("S", json::array()));
  t.root.A = vertex_list(j.value("A", json::array()));
  for (const auto& p : j.value("pastings", json::array())) {
    detail::expect_keys(p, {"face", "patch"}, "pasting");
    t.pastings.push_back({vertex_list(p.at("face")), patch_from(p.at("patch"))});
  }
  return t;
}

json patch_to(const PatchTree& t) {
  json j{{"disk", disk_to(t.root.disk)}, {"S", t.root.S}, {"A", t.root.A}, {"pastings", json::array()}};
  for (const Pasting& p : t.pastings) j["pastings"].push_back({{"face", p.face}, {"patch", patch_to(p.child)}});
  return j;
}

Outgrowth outgrowth_from(const json& j) {
  detail::expect_keys(j, {"base", "vortices"}, "outgrowth");
  Outgrowth o;
  o.base = embedding_from(j.at("base"));
  for (const auto& v : j.value("vortices", json::array())) {
    detail::expect_keys(v, {"graph", "boundary", "bags", "face"}, "vortex");
    Vortex x;
    x.graph = detail::graph_from_json(v.at("graph"));
    x.boundary = vertex_list(v.at("boundary"));
    for (const auto& b : v.at("bags")) x.decomposition.bags.push_back(vertex_list(b));
    o.vortices.push_back(std::move(x));
    o.faces.push_back(vertex_list(v.value("face", json::array())));
  }
  return o;
}

json outgrowth_to(const Outgrowth& o) {
  json j{{"base", format_embedding(o.base)}, {"vortices", json::array()}};
  for (std::size_t i = 0; i < o.vortices.size(); ++i) {
    const Vortex& v = o.vortices[i];
    json x{{"graph", detail::graph_to_json(v.graph)}, {"boundary", v.boundary}, {"bags", v.decomposition.bags}};
    x["face"] = i < o.faces.size() ? o.faces[i] : std::vector<Vertex>{};
    j["vortices"].push_back(x);
  }
  return j;
}

}  // namespace

StructureCertificate parse_certificate(const std::string& json_text, const std::string& base_dir) {
  json j = detail::parse_json(json_text);
  StructureCertificate c;
  try {
    detail::expect_keys(j, {"format", "strict", "params", "host", "H", "tree", "pieces"}, "certificate");
    if (j.at("format").get<int>() != 1) throw ParseError(0, "unsupported certificate format");
    c.strict = j.value("strict", false);
    const auto& q = j.at("params");
    detail::expect_keys(q, {"n", "D", "m", "k", "p", "a"}, "params");
    c.params = {q.at("n").get<int>(), q.at("D").get<int>(), q.at("m").get<int>(),
                q.at("k").get<int>(), q.at("p").get<int>(), q.at("a").get<int>()};
    c.host = detail::graph_from_json(j.at("host"), base_dir);
    c.H = detail::graph_from_json(j.at("H"), base_dir);
    c.tree = detail::tree_from_json(j.at("tree"), base_dir);
    for (const auto& p : j.at("pieces")) {
      detail::expect_keys(p, {"apex", "case", "surface", "outgrowth", "patches"}, "piece");
      PieceWitness w;
      w.apex = vertex_list(p.value("apex", json::array()));
      w.tag = parse_case(p.at("case").get<std::string>());
      if (p.contains("surface")) w.surface = parse_surface(p.at("surface").get<std::string>());
      if (p.contains("outgrowth")) w.outgrowth = outgrowth_from(p.at("outgrowth"));
      for (const auto& x : p.value("patches", json::array())) {
        detail::expect_keys(x, {"face", "patch"}, "patch placement");
        w.patches.push_back({vertex_list(x.at("face")), patch_from(x.at("patch"))});
      }
      c.pieces.push_back(std::move(w));
    }
  } catch (const json::exception& e) {
    throw ParseError(0, e.what());
  }
  return c;
}

std::string format_certificate(const StructureCertificate& c) {
  const CertParams& q = c.params;
  json j{{"format", 1},
         {"strict", c.strict},
         {"params", {{"n", q.n}, {"D", q.D}, {"m", q.m}, {"k", q.k}, {"p", q.p}, {"a", q.a}}},
         {"host", detail::graph_to_json(c.host)},
         {"H", detail::graph_to_json(c.H)},
         {"tree", detail::tree_to_json(c.tree)},
         {"pieces", json::array()}};
  for (const PieceWitness& w : c.pieces) {
    json p{{"apex", w.apex}, {"case", case_name(w.tag)}};
    if (w.surface) p["surface"] = w.surface->name();
    if (w.outgrowth) p["outgrowth"] = outgrowth_to(*w.outgrowth);
    if (!w.patches.empty()) {
      p["patches"] = json::array();
      for (const PatchPlacement& x : w.patches) p["patches"].push_back({{"face", x.face}, {"patch", patch_to(x.patch)}});
    }
    j["pieces"].push_back(p);
  }
  return j.dump(2) + "\n";
}

std::string format_check_result(const CheckResult& r) {
  json j{{"ok", r.ok()}, {"reasons", json::array()}, {"notes", r.notes}};
  for (const Reason& x : r.reasons) j["reasons"].push_back({{"id", x.id}, {"where", x.where}});
  return j.dump(2) + "\n";
}

}  // namespace strukt
