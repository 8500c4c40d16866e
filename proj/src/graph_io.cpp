#include "cyclepack/graph_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cyclepack {

namespace {

// Next non-empty, non-comment line.
bool next_data_line(std::istream& in, std::string& line) {
    while (std::getline(in, line)) {
        std::size_t pos = line.find_first_not_of(" \t\r");
        if (pos == std::string::npos) continue;
        if (line[pos] == '#') continue;
        return true;
    }
    return false;
}

}  // namespace

void write_graph(std::ostream& out, const Graph& g, std::optional<int> ell,
                 const std::string& trailing_comment) {
    out << g.vertex_count() << ' ' << g.edge_count();
    if (ell) out << ' ' << *ell;
    out << '\n';
    for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
    if (!trailing_comment.empty()) {
        std::istringstream lines(trailing_comment);
        std::string line;
        while (std::getline(lines, line)) out << "# " << line << '\n';
    }
}

GraphFile read_graph(std::istream& in) {
    std::string line;
    if (!next_data_line(in, line)) throw std::runtime_error("graph file: missing header line");
    std::istringstream header(line);
    long long n = -1, m = -1;
    header >> n >> m;
    if (n < 0 || m < 0) throw std::runtime_error("graph file: bad header '" + line + "'");
    GraphFile file;
    int ell;
    if (header >> ell) file.ell = ell;
    file.graph = Graph(static_cast<int>(n));
    for (long long i = 0; i < m; ++i) {
        if (!next_data_line(in, line)) throw std::runtime_error("graph file: truncated edge list");
        std::istringstream edge(line);
        VertexId u, v;
        if (!(edge >> u >> v)) throw std::runtime_error("graph file: bad edge line '" + line + "'");
        file.graph.add_edge(u, v);
    }
    return file;
}

GraphFile read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open graph file: " + path);
    return read_graph(in);
}

void write_graph_file(const std::string& path, const Graph& g, std::optional<int> ell,
                      const std::string& trailing_comment) {
    std::ostringstream out;
    write_graph(out, g, ell, trailing_comment);
    write_file_atomic(path, out.str());
}

void write_packing(std::ostream& out, const CyclePacking& p, const std::string& trailing_comment) {
    for (const auto& c : p.cycles) {
        for (std::size_t i = 0; i < c.vertices.size(); ++i) {
            if (i) out << ' ';
            out << c.vertices[i];
        }
        out << '\n';
    }
    if (!trailing_comment.empty()) {
        std::istringstream lines(trailing_comment);
        std::string line;
        while (std::getline(lines, line)) out << "# " << line << '\n';
    }
}

CyclePacking read_packing(std::istream& in, int ell) {
    CyclePacking p;
    p.ell = ell;
    std::string line;
    while (next_data_line(in, line)) {
        std::istringstream row(line);
        Cycle c;
        VertexId v;
        while (row >> v) c.vertices.push_back(v);
        if (!c.vertices.empty()) p.cycles.push_back(std::move(c));
    }
    return p;
}

void write_file_atomic(const std::string& path, const std::string& contents) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write file: " + tmp);
        out << contents;
        if (!out) throw std::runtime_error("write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw std::runtime_error("cannot rename into place: " + path);
    }
}

}  // namespace cyclepack
