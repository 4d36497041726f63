// strukt: command-line front end.
//
// Exit status: 0 affirmative, 1 negative verdict, 2 usage or input error,
// 3 search budget exhausted.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "strukt/admissibility.hpp"
#include "strukt/certcheck.hpp"
#include "strukt/cliquesum.hpp"
#include "strukt/embedding.hpp"
#include "strukt/error.hpp"
#include "strukt/generators.hpp"
#include "strukt/io.hpp"
#include "strukt/patterns.hpp"

using namespace strukt;
using json = nlohmann::json;

namespace {

constexpr int kYes = 0, kNo = 1, kUsage = 2, kBudget = 3;

struct Options {
  bool json = false;
  std::optional<std::uint64_t> budget;
  unsigned threads = 1;
};

SearchBudget budget_from(const Options& o) {
  SearchBudget b;
  if (const char* env = std::getenv("STRUKT_BUDGET")) {
    try {
      b.max_nodes = std::stoull(env);
    } catch (const std::exception&) {
      throw ValidationError("STRUKT_BUDGET must be a nonnegative integer");
    }
  }
  if (o.budget) b.max_nodes = *o.budget;
  b.threads = o.threads;
  return b;
}

json graph_json(const Graph& g) {
  json j{{"vertices", g.num_vertices()}, {"edges", json::array()}};
  for (const Edge& e : g.edges()) j["edges"].push_back({e.u, e.v});
  return j;
}

Graph generate(const std::string& family, const std::vector<std::string>& args, std::uint64_t seed) {
  auto need = [&](std::size_t k) {
    if (args.size() != k)
      throw ValidationError(family + " takes " + std::to_string(k) + " parameter" + (k == 1 ? "" : "s"));
  };
  auto num = [&](std::size_t i) {
    std::size_t used = 0;
    int v = std::stoi(args.at(i), &used);
    if (used != args[i].size()) throw ValidationError("bad integer: " + args[i]);
    return v;
  };
  if (family == "doublewheel") return need(1), double_wheel(num(0));
  if (family == "mgraph") return need(1), m_graph(num(0));
  if (family == "wall") return need(2), wall(num(0), num(1));
  if (family == "admwall") return need(1), admissibility_wall(num(0));
  if (family == "clique") return need(1), clique(num(0));
  if (family == "cycle") return need(1), cycle(num(0));
  if (family == "path") return need(1), path(num(0));
  if (family == "grid") return need(2), grid(num(0), num(1));
  if (family == "bipartite") return need(2), complete_bipartite(num(0), num(1));
  if (family == "star") return need(1), star(num(0));
  if (family == "random") {
    need(2);
    return random_graph(num(0), std::stod(args[1]), seed);
  }
  throw ValidationError("unknown family: " + family);
}

std::string depth_name(Depth d) { return format_depth(d); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph structure toolkit: generators, embeddings, admissibility, clique-sums, patterns, certificates."};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_flag("--json", opt.json, "Machine-readable output");
  app.add_option("--budget", opt.budget, "Search node budget (default: STRUKT_BUDGET or built-in)");
  app.add_option("--threads", opt.threads, "Worker threads for sharded searches")->check(CLI::Range(1u, 256u));

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a graph family");
  std::string family;
  std::vector<std::string> gen_args;
  std::uint64_t seed = 1;
  gen->add_option("family", family, "doublewheel mgraph wall admwall clique cycle path grid bipartite star random")->required();
  gen->add_option("params", gen_args, "Family parameters");
  gen->add_option("--seed", seed, "Seed for the random family");

  // adm
  auto* adm = app.add_subcommand("adm", "Admissibility of a graph or of a given ordering");
  std::string adm_graph, depth_text, eval_path;
  bool exact = false, greedy = false;
  int max_vertices = 16;
  adm->add_option("graph", adm_graph, "Edge-list file or -")->required();
  adm->add_option("--depth", depth_text, "Path length bound: positive integer or inf")->required();
  auto* ex = adm->add_flag("--exact", exact, "Optimal ordering");
  auto* gr = adm->add_flag("--greedy", greedy, "Greedy ordering (default)");
  auto* ev = adm->add_option("--eval", eval_path, "Evaluate the ordering in this file");
  adm->add_option("--max-vertices", max_vertices, "Size limit of the exact solver");
  ex->excludes(gr)->excludes(ev);
  gr->excludes(ev);

  // mf
  auto* mfc = app.add_subcommand("mf", "Face-cover number of H over a surface");
  std::string mf_graph, surface_text = "sphere";
  mfc->add_option("H", mf_graph, "Edge-list file or -")->required();
  mfc->add_option("--surface", surface_text, "sphere, torus, projective, klein, o<h>, n<c>")->required();

  // genus
  auto* gen_g = app.add_subcommand("genus", "Minimum Euler genus");
  std::string genus_graph;
  bool nonorientable = false;
  gen_g->add_option("graph", genus_graph, "Edge-list file or -")->required();
  gen_g->add_flag("--nonorientable", nonorientable, "Minimum over non-orientable embeddings");

  // nicify
  auto* nic = app.add_subcommand("nicify", "Nice embedding of a supergraph of a subdivision of H");
  std::string nic_graph, nic_surface;
  nic->add_option("H", nic_graph, "Edge-list file or -")->required();
  nic->add_option("--surface", nic_surface, "Surface name")->required();

  // topminor / immerse
  auto* tm = app.add_subcommand("topminor", "Find H as a topological minor of G");
  std::string tm_h, tm_g;
  tm->add_option("H", tm_h, "Pattern edge-list file")->required();
  tm->add_option("G", tm_g, "Host edge-list file")->required();
  auto* im = app.add_subcommand("immerse", "Find an immersion of H in G");
  std::string im_h, im_g;
  bool strong = false;
  im->add_option("H", im_h, "Pattern edge-list file")->required();
  im->add_option("G", im_g, "Host edge-list file")->required();
  im->add_flag("--strong", strong, "Strong immersion");

  // compose / order
  auto* comp = app.add_subcommand("compose", "Compose a clique-sum tree");
  std::string comp_tree;
  comp->add_option("tree", comp_tree, "Tree JSON file or -")->required();
  auto* ord = app.add_subcommand("order", "Low-admissibility ordering of a clique-sum tree");
  std::string ord_tree;
  int D = 0, a = 0;
  ord->add_option("tree", ord_tree, "Tree JSON file or -")->required();
  ord->add_option("--D", D, "Degree bound")->required();
  ord->add_option("--a", a, "Number of vertices allowed above the degree bound")->required();

  // check
  auto* chk = app.add_subcommand("check", "Check a structure certificate");
  std::string cert_path;
  chk->add_option("certificate", cert_path, "Certificate JSON file or -")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kYes : kUsage;
  }

  auto base_dir = [](const std::string& path) {
    if (path == "-") return std::string(".");
    auto slash = path.find_last_of('/');
    return slash == std::string::npos ? std::string(".") : path.substr(0, slash);
  };

  std::ostringstream out;
  int status = kYes;
  try {
    SearchBudget budget = budget_from(opt);
    if (*gen) {
      Graph g = generate(family, gen_args, seed);
      out << (opt.json ? graph_json(g).dump(2) + "\n" : serialize_graph(g));
    } else if (*adm) {
      Graph g = read_graph(adm_graph);
      Depth d = parse_depth(depth_text);
      AdmissibilityReport r;
      std::string method = "greedy";
      if (!eval_path.empty()) {
        r = ordering_admissibility(g, parse_ordering(read_text(eval_path)), d, budget);
        method = "eval";
      } else if (exact) {
        r = admissibility_exact(g, d, budget, max_vertices);
        method = "exact";
      } else {
        r = admissibility_greedy(g, d, budget);
      }
      if (opt.json) {
        json j{{"method", method}, {"depth", depth_name(d)}, {"value", r.value}, {"ordering", r.ordering.sequence}};
        j["per_vertex"] = json::array();
        for (Vertex v : r.ordering.sequence) j["per_vertex"].push_back({v, r.per_vertex.at(v)});
        out << j.dump(2) << "\n";
      } else {
        out << "value " << r.value << "\n" << "ordering " << format_ordering(r.ordering) << "\n";
      }
    } else if (*mfc) {
      Graph h = read_graph(mf_graph);
      Surface s = parse_surface(surface_text);
      auto w = mf_witness(h, s, budget);
      if (!w) status = kNo;
      if (opt.json) {
        json j{{"surface", s.name()}, {"mf", w ? json(w->value) : json("inf")}};
        if (w) {
          j["embedding"] = format_embedding(w->embedding);
          j["faces"] = w->faces;
        }
        out << j.dump(2) << "\n";
      } else {
        out << "mf " << (w ? std::to_string(w->value) : std::string("inf")) << "\n";
      }
    } else if (*gen_g) {
      Graph g = read_graph(genus_graph);
      auto eg = min_genus(g, !nonorientable, budget);
      if (!eg) status = kNo;
      std::string kind = nonorientable ? "nonorientable" : "orientable";
      if (opt.json) {
        out << json{{"kind", kind}, {"euler_genus", eg ? json(*eg) : json(nullptr)}}.dump(2) << "\n";
      } else {
        out << kind << " euler_genus " << (eg ? std::to_string(*eg) : std::string("none")) << "\n";
      }
    } else if (*nic) {
      Graph h = read_graph(nic_graph);
      Surface s = parse_surface(nic_surface);
      if (!embeds_in(h, s.closed(), budget)) {
        status = kNo;
        out << (opt.json ? json{{"surface", s.name()}, {"embeds", false}}.dump(2) + "\n" : "does not embed\n");
      } else {
        NiceEmbedding n = nicify(h, s, budget);
        if (opt.json) {
          json j{{"surface", s.name()}, {"embeds", true}, {"graph", graph_json(n.graph)},
                 {"embedding", format_embedding(n.embedding)}, {"faces", n.faces}};
          out << j.dump(2) << "\n";
        } else {
          out << format_embedding(n.embedding) << "# faces";
          for (int f : n.faces) out << " " << f;
          out << "\n";
        }
      }
    } else if (*tm) {
      Graph h = read_graph(tm_h), g = read_graph(tm_g);
      auto m = find_topological_minor(h, g, budget);
      if (!m) status = kNo;
      if (m) {
        out << format_model(*m);
      } else {
        out << (opt.json ? json{{"kind", "topological-minor"}, {"found", false}}.dump(2) + "\n" : "not found\n");
      }
    } else if (*im) {
      Graph h = read_graph(im_h), g = read_graph(im_g);
      auto m = find_immersion(h, g, strong, budget);
      if (!m) status = kNo;
      if (m) {
        out << format_model(*m);
      } else {
        out << (opt.json ? json{{"kind", "immersion"}, {"strong", strong}, {"found", false}}.dump(2) + "\n" : "not found\n");
      }
    } else if (*comp) {
      Graph g = compose(parse_clique_sum_tree(read_text(comp_tree), base_dir(comp_tree)));
      out << (opt.json ? graph_json(g).dump(2) + "\n" : serialize_graph(g));
    } else if (*ord) {
      CliqueSumTree t = parse_clique_sum_tree(read_text(ord_tree), base_dir(ord_tree));
      Ordering o = converse_ordering(t, D, a);
      Graph g = compose(t);
      int value = ordering_admissibility(g, o, kInfiniteDepth, budget).value;
      if (opt.json) {
        out << json{{"ordering", o.sequence}, {"value", value}, {"bound", a + D}}.dump(2) << "\n";
      } else {
        out << "ordering " << format_ordering(o) << "\n" << "value " << value << "\n";
      }
    } else if (*chk) {
      StructureCertificate c = parse_certificate(read_text(cert_path), base_dir(cert_path));
      CheckResult r = check_certificate(c, budget);
      if (!r.ok()) status = kNo;
      if (opt.json) {
        out << format_check_result(r);
      } else {
        out << (r.ok() ? "accepted" : "rejected") << "\n";
        for (const Reason& x : r.reasons) out << "reason " << x.id << (x.where.empty() ? "" : " @ " + x.where) << "\n";
        for (const std::string& n : r.notes) out << "note " << n << "\n";
      }
    }
  } catch (const ResourceError& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return kBudget;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: bad number\n";
    return kUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: number out of range\n";
    return kUsage;
  }
  std::cout << out.str();
  return status;
}
