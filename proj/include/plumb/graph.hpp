#pragma once

#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "plumb/numeric.hpp"

namespace plumb {

// Malformed input text or structurally invalid file (unknown ids, self-loops,
// duplicates).  Maps to exit code 2 in the CLI.
struct ParseError : std::runtime_error {
    int line;
    int col;
    ParseError(int line_, int col_, const std::string& what_)
        : std::runtime_error("parse error at " + std::to_string(line_) + ":" +
                             std::to_string(col_) + ": " + what_),
          line(line_),
          col(col_) {}
};

// Well-formed input that violates a mathematical precondition (disconnected,
// not negative definite, unknown name at the API level).  Exit code 1.
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what_) : std::runtime_error(what_) {}
};

struct VertexData {
    std::string id;
    Int euler;
    unsigned long genus = 0;
};

// Connected plumbing graph with negative definite intersection matrix.
// Instances are only produced through validated(), so every PlumbingGraph in
// flight satisfies both conditions.  Vertex order is file/insertion order and
// is the coordinate order of every CycleVec tied to this graph.
class PlumbingGraph {
  public:
    static PlumbingGraph validated(std::string name, std::vector<VertexData> vertices,
                                   std::vector<std::pair<int, int>> edges);

    const std::string& name() const { return name_; }
    size_t size() const { return vertices_.size(); }
    const std::vector<VertexData>& vertices() const { return vertices_; }
    const VertexData& vertex(int v) const { return vertices_.at(v); }
    // Edge list as index pairs, insertion order, parallel edges repeated.
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

    int index_of(const std::string& id) const;       // -1 when absent
    int require_index(const std::string& id) const;  // DomainError when absent
    size_t degree(int v) const;
    size_t edge_multiplicity(int u, int w) const;

    // Symmetric matrix with euler numbers on the diagonal and edge
    // multiplicities off it.
    std::vector<std::vector<Int>> intersection_matrix() const;

    bool structurally_equal(const PlumbingGraph& other) const;

  private:
    PlumbingGraph() = default;
    std::string name_;
    std::vector<VertexData> vertices_;
    std::vector<std::pair<int, int>> edges_;
    std::unordered_map<std::string, int> index_;
};

struct NamedCycle {
    std::string name;
    CycleVec coeffs;
};

struct ParsedFile {
    PlumbingGraph graph;
    std::vector<NamedCycle> cycles;
};

// Text format:
//   graph <name>
//   v <id> euler=<int> [genus=<uint>]
//   e <id> <id>
//   cycle <name> <id>=<int> ...
// '#' starts a comment.  Errors carry 1-based line/column.
ParsedFile parse_graph_file(const std::string& text);

std::string serialize_graph(const PlumbingGraph& g,
                            const std::vector<NamedCycle>& cycles = {});

std::string to_dot(const PlumbingGraph& g);

// Linear map between cycle lattices of two graphs, as a dense rows x cols
// integer matrix.  Blow-up pullbacks compose through this.
struct CycleMap {
    size_t rows = 0, cols = 0;
    std::vector<CycleVec> m;

    static CycleMap identity(size_t n);
    static CycleMap compose(const CycleMap& outer, const CycleMap& inner);
    CycleVec apply(const CycleVec& x) const;
    RatCycleVec apply(const RatCycleVec& x) const;
};

struct BlowupRecord {
    enum class Kind { vertex, edge };
    Kind kind;
    std::string at_u;        // vertex blow-up target, or first edge endpoint
    std::string at_w;        // second edge endpoint (edge kind only)
    std::string new_vertex;  // fresh id "_b<k>"
};

struct BlowupResult {
    PlumbingGraph graph;
    BlowupRecord record;
    CycleMap pullback;  // old cycle lattice -> new cycle lattice
};

BlowupResult blow_up_vertex(const PlumbingGraph& g, const std::string& v);
BlowupResult blow_up_edge(const PlumbingGraph& g, const std::string& u, const std::string& w);

struct BlowupSequence {
    PlumbingGraph graph;
    std::vector<BlowupRecord> records;
    CycleMap pullback;  // composite
};

// Iterated vertex blow-up: first at v, then at the vertex created last,
// producing the standard chain of length `times`.
BlowupSequence blow_up_sequence_at(const PlumbingGraph& g, const std::string& v, unsigned times);

// Full subgraph induced by a vertex subset, split into connected components.
// Each component is re-validated as a PlumbingGraph in its own right.
struct Subconfiguration {
    std::vector<int> kept;  // parent indices, ascending
    std::vector<PlumbingGraph> components;
    std::vector<std::vector<int>> component_vertices;  // parent indices per component
};

Subconfiguration full_subgraph(const PlumbingGraph& g, const std::vector<std::string>& kept_ids);

// Deterministic random connected graph, negative definite by diagonal
// dominance: a random tree plus a few extra parallel edges, euler numbers
// <= -(degree+1), genera in {0,1}.
PlumbingGraph random_negdef_graph(unsigned long long seed, size_t n_vertices);

}  // namespace plumb
