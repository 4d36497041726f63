#pragma once

#include <optional>
#include <string>
#include <vector>

#include "strukt/budget.hpp"
#include "strukt/cliquesum.hpp"
#include "strukt/embedding.hpp"
#include "strukt/graph.hpp"

namespace strukt {

/// One failed clause. `id` is a fixed identifier, `where` locates it
/// ("piece 2", "piece 0 / vortex 1", ...).
struct Reason {
  std::string id;
  std::string where;

  friend bool operator==(const Reason&, const Reason&) = default;
};

struct CheckResult {
  std::vector<Reason> reasons;
  /// Interpretations applied while checking (not failures).
  std::vector<std::string> notes;

  bool ok() const { return reasons.empty(); }
  bool has(const std::string& id) const;
  std::vector<std::string> ids() const;
};

/// Graph glued into a face; `boundary` (v_1..v_r) are the vertices it shares
/// with the embedded part, `decomposition` has r bags.
struct Vortex {
  Graph graph;
  std::vector<Vertex> boundary;
  PathDecomposition decomposition;
};

/// Reasons: path-decomposition ids, "bag count", "boundary vertex",
/// "boundary-bag membership", "width".
CheckResult check_vortex(const Vortex& v, int p);
/// As above with "pairwise intersection" in place of "width".
CheckResult check_standard_vortex(const Vortex& v, int p);

/// G_0 embedded, plus vortices. `faces[i]` is the vertex walk of the base
/// face vortex i sits in; it may be empty only when the boundary is.
struct Outgrowth {
  Embedding base;
  std::vector<Vortex> vortices;
  std::vector<std::vector<Vertex>> faces;

  /// G_0 together with every vortex graph.
  Graph graph() const;
};

/// Reasons: "vortex count", "base embedding", "face missing", "distinct faces",
/// "attachment", "attachment order", "vortex disjointness", "edge disjointness",
/// plus check_vortex reasons. Boundaries may match their face up to rotation,
/// and also reflection unless `strict`.
CheckResult check_outgrowth(const Outgrowth& o, int k, int p, bool strict = false);

struct BasicParams {
  int n = 0;
  /// nullopt is infinity.
  std::optional<int> t;
  int D = 0;
  int m = 0;
  int a = 0;
};

struct BasicWitness {
  DiskGraph disk;
  std::vector<Vertex> S;
  std::vector<Vertex> A;
  BasicParams params;
};

/// Reasons: disk ids, "unknown vertex", "boundary size", "S size", "apex size",
/// "far high-degree vertex". An empty graph with an empty boundary is accepted.
CheckResult check_basic(const BasicWitness& w, const BasicParams& params);
inline CheckResult check_basic(const BasicWitness& w) { return check_basic(w, w.params); }

struct Pasting;

/// A basic graph with patches pasted into inner faces of its own disk
/// embedding. Vertex ids are shared: a child's boundary is the face cycle and
/// its other vertices are new.
struct PatchTree {
  BasicWitness root;
  std::vector<Pasting> pastings;

  /// Union of every node's graph.
  Graph graph() const;
};

struct Pasting {
  std::vector<Vertex> face;
  PatchTree child;
};

/// Reasons: check_basic reasons per node, "face missing", "outer face",
/// "face not bounded by a cycle", "distinct faces", "boundary mismatch",
/// "vertex clash".
CheckResult check_patch(const PatchTree& t, const BasicParams& params, bool strict = false);

struct PatchPlacement {
  std::vector<Vertex> face;
  PatchTree patch;
};

/// Reasons: as check_patch for the placements, plus "subgraph" (gp minus the
/// vortices is not inside the pasted composition) and "vortex missing".
CheckResult check_expansion(const Graph& gp, const Outgrowth& o, const std::vector<PatchPlacement>& patches,
                            const BasicParams& params, bool strict = false);

enum class CaseTag { bounded_degree, nonembeddable_surface, few_vortex_faces };

std::string case_name(CaseTag c);
CaseTag parse_case(const std::string& s);

struct PieceWitness {
  std::vector<Vertex> apex;
  CaseTag tag = CaseTag::bounded_degree;
  std::optional<Surface> surface;
  std::optional<Outgrowth> outgrowth;
  std::vector<PatchPlacement> patches;
};

struct CertParams {
  int n = 0;
  int D = 0;
  int m = 0;
  int k = 0;
  int p = 0;
  int a = 0;
};

/// Witness ids are piece-local.
struct StructureCertificate {
  Graph host;
  Graph H;
  CliqueSumTree tree;
  std::vector<PieceWitness> pieces;
  CertParams params;
  bool strict = false;
};

/// Reasons besides the ones of the parts: "tree", "composition", "piece count",
/// "unknown vertex", "apex size", "degree bound", "missing witness",
/// "outgrowth union", "base genus", "H embeds in Σ", "H does not embed in Σ",
/// "mf below 2", "high-degree vertex outside vortices",
/// "too many high-degree vortices". Bordered surfaces are read as their closed
/// counterparts (recorded in the notes). Throws ResourceError when the
/// embedding searches for H run out of budget.
CheckResult check_certificate(const StructureCertificate& c, const SearchBudget& budget = {});

/// JSON with "format": 1; unknown fields are rejected (ParseError).
StructureCertificate parse_certificate(const std::string& json_text, const std::string& base_dir = ".");
std::string format_certificate(const StructureCertificate& c);
std::string format_check_result(const CheckResult& r);

}  // namespace strukt
