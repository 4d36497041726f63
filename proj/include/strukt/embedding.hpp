#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "strukt/budget.hpp"
#include "strukt/graph.hpp"

namespace strukt {

/// Closed or bordered surface in canonical form: Σ(c,h,b) with c = 0 when
/// orientable and h = 0 otherwise. `euler_genus` is c + 2h.
struct Surface {
  bool orientable = true;
  int euler_genus = 0;
  int boundary_components = 0;

  static Surface sphere() { return {true, 0, 0}; }
  static Surface torus() { return {true, 2, 0}; }
  static Surface projective_plane() { return {false, 1, 0}; }
  static Surface klein_bottle() { return {false, 2, 0}; }
  static Surface with_handles(int h);
  static Surface with_crosscaps(int c);

  /// The same surface with its boundary components capped.
  Surface closed() const { return {orientable, euler_genus, 0}; }
  /// `sphere`, `torus`, `projective`, `klein`, `o<h>` or `n<c>`.
  std::string name() const;

  friend bool operator==(const Surface&, const Surface&) = default;
};

/// Accepts the names produced by Surface::name plus `o0`.
Surface parse_surface(std::string_view text);

/// One traversal step of a face: the walk leaves `from` towards `to` and
/// `orientation` is the local orientation in force at `from`.
struct Side {
  Vertex from = 0;
  Vertex to = 0;
  int orientation = 1;

  friend bool operator==(const Side&, const Side&) = default;
};

struct FaceWalk {
  std::vector<Side> sides;
  /// Vertices in walk order (sides[i].from); a lone vertex for the one face of K_1.
  std::vector<Vertex> vertices;

  std::size_t length() const { return sides.size(); }
  /// No vertex repeats and the walk has at least three sides.
  bool is_simple_cycle() const;
  bool contains(Vertex v) const;
};

/// Rotation system with edge signatures over a connected simple graph.
class Embedding {
 public:
  Embedding() = default;
  /// `rotation[i]` is the cyclic neighbor order at graph.vertices()[i].
  /// `signature[j]` is the sign of graph.edges()[j]; empty means all +1.
  Embedding(Graph graph, std::vector<std::vector<Vertex>> rotation, std::vector<int> signature = {});

  const Graph& graph() const { return graph_; }
  const std::vector<Vertex>& rotation(Vertex v) const;
  const std::vector<std::vector<Vertex>>& rotations() const { return rotation_; }
  int sign(Vertex u, Vertex v) const;
  const std::vector<int>& signature() const { return signature_; }
  /// Position of {u,v} in graph().edges(); throws MissingEdgeError.
  std::size_t edge_index(Vertex u, Vertex v) const;

  friend bool operator==(const Embedding&, const Embedding&) = default;

 private:
  Graph graph_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> rotation_;
  std::vector<int> signature_;
};

/// Text interchange: one `r <v>: <n1> <n2> ...` line per vertex (cyclic
/// neighbor order) and one `s <u> <v> <+|->` line per edge.
std::string format_embedding(const Embedding& e);
Embedding parse_embedding(std::string_view text);

/// Faces of the cellular embedding determined by `e`, in a deterministic order.
/// Throws DomainError for disconnected graphs.
std::vector<FaceWalk> trace_faces(const Embedding& e);

struct EulerGenus {
  int euler_genus = 0;
  bool orientable = true;

  friend bool operator==(const EulerGenus&, const EulerGenus&) = default;
};

/// eg = 2 - |V| + |E| - |F|; orientable iff vertex flips can make every sign +1.
EulerGenus euler_genus(const Embedding& e);
bool is_orientable(const Embedding& e);

/// Does the cellular embedding `eg` fit in the closed surface `s`? Orientable
/// surfaces accept orientable embeddings with eg <= e; non-orientable ones
/// accept non-orientable embeddings with eg <= e and orientable ones with eg <= e - 1.
bool fits_in(const EulerGenus& eg, const Surface& s);

/// Minimum Euler genus over orientable (or strictly non-orientable) rotation
/// systems, by exhaustive branch and bound. nullopt when no such system exists
/// (a tree has no non-orientable one). Throws DomainError on disconnected input
/// and ResourceError when the budget runs out.
std::optional<int> min_genus(const Graph& g, bool orientable, const SearchBudget& budget = {});

/// Whether g embeds (not necessarily cellularly) in the closed surface s.
bool embeds_in(const Graph& g, const Surface& s, const SearchBudget& budget = {});

/// Minimum number of faces touching every vertex of degree >= 4. Exact set cover.
std::vector<int> min_dominating_faces(const Embedding& e);

struct MfWitness {
  int value = 0;
  Embedding embedding;
  /// Indices into trace_faces(embedding).
  std::vector<int> faces;
};

/// mf(h, s): minimum over all embeddings of h in s (cellular embeddings in
/// every compatible sub-surface) of the size of a face set dominating the
/// vertices of degree >= 4. nullopt is infinity (h does not embed in s).
/// On the sphere with budget.fast_paths the value comes from planarity tests
/// of h plus one apex per face; otherwise from rotation enumeration.
std::optional<int> mf(const Graph& h, const Surface& s, const SearchBudget& budget = {});
std::optional<MfWitness> mf_witness(const Graph& h, const Surface& s, const SearchBudget& budget = {});

struct NiceEmbedding {
  Graph graph;
  Embedding embedding;
  /// Indices into trace_faces(embedding); each vertex of degree >= 4 lies on exactly one.
  std::vector<int> faces;
  /// Each edge {u,v} of h (u < v) as a path in graph from the image of u to the image of v.
  std::map<Edge, std::vector<Vertex>> paths;
};

/// Closed 2-cell, triangle-free supergraph of a subdivision of h with a face
/// set of size mf(h, s) touching each vertex of degree >= 4 exactly once.
/// Throws DomainError when h does not embed in s.
NiceEmbedding nicify(const Graph& h, const Surface& s, const SearchBudget& budget = {});

/// Every face walk is a simple cycle.
bool is_closed_2cell(const Embedding& e);

/// Subdivides {u,v} inside the embedding with a fresh vertex (returned via `added`).
Embedding subdivide_in_embedding(const Embedding& e, Edge edge, Vertex* added = nullptr);

/// Adds an edge between the corners at sides[i].from and sides[j].from of the
/// given face walk of e, drawn inside that face (which it splits in two).
Embedding add_chord(const Embedding& e, const FaceWalk& face, std::size_t i, std::size_t j);

/// Adds a new vertex inside `face` joined to the corners at the listed walk
/// positions (ascending). The new vertex id is e.graph().next_vertex_id().
Embedding add_vertex_in_face(const Embedding& e, const FaceWalk& face, const std::vector<std::size_t>& corners);

/// Plane graph in a closed disk. The face `outer_face` contains the disk
/// boundary; `boundary` lists G ∩ bd(Σ) in cyclic order along it.
struct DiskGraph {
  Embedding embedding;
  FaceWalk outer_face;
  std::vector<Vertex> boundary;

  const Graph& graph() const { return embedding.graph(); }
};

/// Reason identifiers: "disk-genus", "disk-outer-face", "disk-boundary-order".
std::vector<std::string> disk_violations(const DiskGraph& d);

/// Finds the face walk of e whose vertex sequence equals `cycle` up to
/// rotation (and reflection when allowed); -1 when there is none.
int find_face(const std::vector<FaceWalk>& faces, const std::vector<Vertex>& cycle, bool allow_reflection = true);

/// Minimum number of vertices of G on a G-normal curve in the disk from u to w.
///
/// BFS in the vertex–region incidence graph. Regions are the inner faces plus
/// the pieces of the outer face cut off between consecutive boundary vertices.
int radial_distance(const DiskGraph& d, Vertex u, Vertex w);

}  // namespace strukt
