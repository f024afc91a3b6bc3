#pragma once
#include "matrix.hpp"
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace blockfactor {

enum class GraphKind { undirected, directed, bipartite, signed_ };

// Typed multigraph. Edges accumulate weight (multiplicity for multigraphs,
// signed reals for signed graphs); adjacency() materializes the dense matrix
// with the bookkeeping conventions applied.
struct Graph {
    GraphKind kind = GraphKind::undirected;
    int n = 0;            // total node count (n1 + n2 for bipartite)
    int n1 = 0, n2 = 0;   // part sizes, bipartite only
    struct Edge {
        int u, v;
        double w;
    };
    std::vector<Edge> edges;
};

// Parses `src dst [weight]` lines; `#` starts a comment, blank lines are
// skipped. Node ids are 0-based; n = 1 + max id (ids never seen stay as
// isolated nodes). For bipartite graphs src indexes part one and dst part
// two, each 0-based within its part. Weight defaults to 1. Throws on
// malformed lines (with line number) and on negative weights for kinds other
// than signed.
Graph load_edge_list(std::istream& in, GraphKind kind);
Graph load_edge_list_file(const std::string& path, GraphKind kind);

// Dense adjacency. Undirected/signed graphs store each listed edge
// symmetrically, so a self-edge contributes 2w to A_ii (A_ii is twice the
// self-edge count). Directed graphs place w at (u,v) only. Bipartite graphs
// return the symmetric embedding of their part-one x part-two block.
Matrix adjacency(const Graph& g);

// [[0, B], [B^T, 0]] for a nonnegative n1 x n2 block.
Matrix bipartite_embed(const Matrix& b);

// (Aplus, Aminus), both nonnegative with disjoint supports, Aplus - Aminus
// recovering the signed adjacency. Throws unless g.kind is signed.
std::pair<Matrix, Matrix> split_signed(const Graph& g);

// Label files: one integer per line, line i = node i.
std::vector<int> load_labels_file(const std::string& path);
void save_labels_file(const std::string& path, const std::vector<int>& labels);

} // namespace blockfactor
