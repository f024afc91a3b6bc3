#include "blockfactor/graph.hpp"
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace blockfactor {

Graph load_edge_list(std::istream& in, GraphKind kind) {
    Graph g;
    g.kind = kind;
    std::string line;
    int lineno = 0;
    int max_u = -1, max_v = -1;
    while (std::getline(in, line)) {
        ++lineno;
        size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        std::istringstream ls(line);
        long long u, v;
        double w = 1.0;
        if (!(ls >> u >> v)) throw std::runtime_error("edge list line " + std::to_string(lineno) + ": expected `src dst [weight]`");
        ls >> w;
        if (ls.fail() && !ls.eof()) throw std::runtime_error("edge list line " + std::to_string(lineno) + ": bad weight");
        if (u < 0 || v < 0) throw std::runtime_error("edge list line " + std::to_string(lineno) + ": negative node id");
        if (w < 0 && kind != GraphKind::signed_)
            throw std::domain_error("edge list line " + std::to_string(lineno) + ": negative weight on a non-signed graph");
        g.edges.push_back({static_cast<int>(u), static_cast<int>(v), w});
        if (u > max_u) max_u = static_cast<int>(u);
        if (v > max_v) max_v = static_cast<int>(v);
    }
    if (kind == GraphKind::bipartite) {
        g.n1 = max_u + 1;
        g.n2 = max_v + 1;
        g.n = g.n1 + g.n2;
    } else {
        g.n = std::max(max_u, max_v) + 1;
    }
    return g;
}

Graph load_edge_list_file(const std::string& path, GraphKind kind) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open edge list: " + path);
    return load_edge_list(in, kind);
}

Matrix adjacency(const Graph& g) {
    if (g.kind == GraphKind::bipartite) {
        Matrix b(g.n1, g.n2);
        for (const auto& e : g.edges) b(e.u, e.v) += e.w;
        return bipartite_embed(b);
    }
    Matrix a(g.n, g.n);
    for (const auto& e : g.edges) {
        if (g.kind == GraphKind::directed) {
            a(e.u, e.v) += e.w;
        } else {
            a(e.u, e.v) += e.w;
            a(e.v, e.u) += e.w;  // u == v lands twice: A_ii is 2x the self-edge count
        }
    }
    return a;
}

Matrix bipartite_embed(const Matrix& b) {
    const int n1 = b.rows, n2 = b.cols;
    Matrix a(n1 + n2, n1 + n2);
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j) {
            a(i, n1 + j) = b(i, j);
            a(n1 + j, i) = b(i, j);
        }
    return a;
}

std::pair<Matrix, Matrix> split_signed(const Graph& g) {
    if (g.kind != GraphKind::signed_) throw std::domain_error("split_signed wants a signed graph");
    Matrix a = adjacency(g);
    Matrix plus(a.rows, a.cols), minus(a.rows, a.cols);
    for (size_t k = 0; k < a.a.size(); ++k) {
        double v = a.a[k];
        if (v > 0) plus.a[k] = v;
        else if (v < 0) minus.a[k] = -v;
    }
    return {plus, minus};
}

std::vector<int> load_labels_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open label file: " + path);
    std::vector<int> labels;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        try {
            labels.push_back(std::stoi(line));
        } catch (const std::exception&) {
            throw std::runtime_error("label file line " + std::to_string(lineno) + ": expected an integer");
        }
    }
    return labels;
}

void save_labels_file(const std::string& path, const std::vector<int>& labels) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write label file: " + path);
    for (int l : labels) out << l << "\n";
}

} // namespace blockfactor
