#include "plumb/graph.hpp"

#include <algorithm>
#include <cctype>
#include <queue>
#include <sstream>

#include "plumb/lattice.hpp"

namespace plumb {

namespace {

bool valid_id(const std::string& s) {
    if (s.empty() || s[0] == '-') return false;
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c))) return false;
        if (c == '=' || c == ',' || c == '#' || c == '*' || c == '"') return false;
    }
    return true;
}

bool integer_literal(const std::string& s) {
    size_t i = (s.size() > 1 && s[0] == '-') ? 1 : 0;
    if (i >= s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

struct Token {
    std::string text;
    int col;  // 1-based
};

std::vector<Token> tokenize(const std::string& line) {
    std::vector<Token> out;
    size_t i = 0;
    while (i < line.size()) {
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        if (line[i] == '#') break;
        size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])) &&
               line[j] != '#')
            ++j;
        out.push_back({line.substr(i, j - i), static_cast<int>(i) + 1});
        i = j;
    }
    return out;
}

std::vector<int> component_labels(size_t n, const std::vector<std::pair<int, int>>& edges,
                                  int* n_components) {
    std::vector<std::vector<int>> adj(n);
    for (const auto& [u, w] : edges) {
        adj[u].push_back(w);
        adj[w].push_back(u);
    }
    std::vector<int> label(n, -1);
    int comp = 0;
    for (size_t s = 0; s < n; ++s) {
        if (label[s] != -1) continue;
        std::queue<int> q;
        q.push(static_cast<int>(s));
        label[s] = comp;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int w : adj[v])
                if (label[w] == -1) {
                    label[w] = comp;
                    q.push(w);
                }
        }
        ++comp;
    }
    *n_components = comp;
    return label;
}

std::string fresh_blowup_id(const std::vector<VertexData>& vertices) {
    unsigned long next = 1;
    for (const auto& v : vertices) {
        if (v.id.size() > 2 && v.id.compare(0, 2, "_b") == 0 &&
            integer_literal(v.id.substr(2)) && v.id[2] != '-') {
            unsigned long k = std::stoul(v.id.substr(2));
            next = std::max(next, k + 1);
        }
    }
    return "_b" + std::to_string(next);
}

}  // namespace

PlumbingGraph PlumbingGraph::validated(std::string name, std::vector<VertexData> vertices,
                                       std::vector<std::pair<int, int>> edges) {
    if (vertices.empty()) throw DomainError("graph has no vertices");
    PlumbingGraph g;
    g.name_ = std::move(name);
    g.vertices_ = std::move(vertices);
    g.edges_ = std::move(edges);
    for (size_t i = 0; i < g.vertices_.size(); ++i) {
        const auto& id = g.vertices_[i].id;
        if (!g.index_.emplace(id, static_cast<int>(i)).second)
            throw DomainError("duplicate vertex id '" + id + "'");
    }
    const int n = static_cast<int>(g.vertices_.size());
    for (const auto& [u, w] : g.edges_) {
        if (u < 0 || w < 0 || u >= n || w >= n) throw DomainError("edge endpoint out of range");
        if (u == w)
            throw DomainError("self-loop at vertex '" + g.vertices_[u].id + "'");
    }
    int comps = 0;
    component_labels(g.vertices_.size(), g.edges_, &comps);
    if (comps != 1)
        throw DomainError("graph is not connected (" + std::to_string(comps) + " components)");
    PivotCheck pc = ldl_pivots(g.intersection_matrix());
    if (!pc.negative_definite)
        throw DomainError("intersection matrix is not negative definite (leading principal minor " +
                          std::to_string(pc.bad_index) + ", vertex '" +
                          g.vertices_[pc.bad_index - 1].id + "')");
    return g;
}

int PlumbingGraph::index_of(const std::string& id) const {
    auto it = index_.find(id);
    return it == index_.end() ? -1 : it->second;
}

int PlumbingGraph::require_index(const std::string& id) const {
    int v = index_of(id);
    if (v < 0) throw DomainError("unknown vertex '" + id + "'");
    return v;
}

size_t PlumbingGraph::degree(int v) const {
    size_t d = 0;
    for (const auto& [u, w] : edges_)
        if (u == v || w == v) ++d;
    return d;
}

size_t PlumbingGraph::edge_multiplicity(int u, int w) const {
    size_t d = 0;
    for (const auto& [a, b] : edges_)
        if ((a == u && b == w) || (a == w && b == u)) ++d;
    return d;
}

std::vector<std::vector<Int>> PlumbingGraph::intersection_matrix() const {
    const size_t n = vertices_.size();
    std::vector<std::vector<Int>> m(n, std::vector<Int>(n, 0));
    for (size_t i = 0; i < n; ++i) m[i][i] = vertices_[i].euler;
    for (const auto& [u, w] : edges_) {
        m[u][w] += 1;
        m[w][u] += 1;
    }
    return m;
}

bool PlumbingGraph::structurally_equal(const PlumbingGraph& other) const {
    if (name_ != other.name_ || vertices_.size() != other.vertices_.size() ||
        edges_.size() != other.edges_.size())
        return false;
    for (size_t i = 0; i < vertices_.size(); ++i) {
        const auto& a = vertices_[i];
        const auto& b = other.vertices_[i];
        if (a.id != b.id || a.euler != b.euler || a.genus != b.genus) return false;
    }
    auto normalized = [](const std::vector<std::pair<int, int>>& es) {
        std::vector<std::pair<int, int>> out;
        out.reserve(es.size());
        for (auto [u, w] : es) out.emplace_back(std::min(u, w), std::max(u, w));
        std::sort(out.begin(), out.end());
        return out;
    };
    return normalized(edges_) == normalized(other.edges_);
}

ParsedFile parse_graph_file(const std::string& text) {
    std::vector<std::string> lines;
    {
        std::string cur;
        for (char c : text) {
            if (c == '\n') {
                lines.push_back(cur);
                cur.clear();
            } else if (c != '\r') {
                cur.push_back(c);
            }
        }
        lines.push_back(cur);
    }

    std::string name;
    bool saw_name = false;
    std::vector<VertexData> vertices;
    std::unordered_map<std::string, int> vertex_index;
    struct PendingEdge {
        Token a, b;
        int line;
    };
    struct PendingCycle {
        Token name;
        std::vector<Token> entries;
        int line;
    };
    std::vector<PendingEdge> pending_edges;
    std::vector<PendingCycle> pending_cycles;

    for (size_t li = 0; li < lines.size(); ++li) {
        const int line_no = static_cast<int>(li) + 1;
        auto toks = tokenize(lines[li]);
        if (toks.empty()) continue;
        const Token& head = toks[0];
        if (head.text == "graph") {
            if (toks.size() != 2)
                throw ParseError(line_no, head.col, "expected 'graph <name>'");
            if (saw_name) throw ParseError(line_no, head.col, "duplicate graph directive");
            name = toks[1].text;
            saw_name = true;
        } else if (head.text == "v") {
            if (toks.size() < 3)
                throw ParseError(line_no, head.col, "expected 'v <id> euler=<int> [genus=<uint>]'");
            const Token& idt = toks[1];
            if (!valid_id(idt.text))
                throw ParseError(line_no, idt.col, "invalid vertex id '" + idt.text + "'");
            if (vertex_index.count(idt.text))
                throw ParseError(line_no, idt.col, "duplicate vertex id '" + idt.text + "'");
            VertexData vd;
            vd.id = idt.text;
            bool saw_euler = false, saw_genus = false;
            for (size_t t = 2; t < toks.size(); ++t) {
                const std::string& s = toks[t].text;
                size_t eq = s.find('=');
                if (eq == std::string::npos)
                    throw ParseError(line_no, toks[t].col, "expected key=value, got '" + s + "'");
                std::string key = s.substr(0, eq), val = s.substr(eq + 1);
                if (key == "euler") {
                    if (saw_euler) throw ParseError(line_no, toks[t].col, "duplicate euler");
                    if (!integer_literal(val))
                        throw ParseError(line_no, toks[t].col, "bad euler value '" + val + "'");
                    vd.euler = Int(val);
                    saw_euler = true;
                } else if (key == "genus") {
                    if (saw_genus) throw ParseError(line_no, toks[t].col, "duplicate genus");
                    if (!integer_literal(val) || val[0] == '-')
                        throw ParseError(line_no, toks[t].col, "bad genus value '" + val + "'");
                    Int gv(val);
                    if (!gv.fits_ulong_p())
                        throw ParseError(line_no, toks[t].col, "genus too large");
                    vd.genus = gv.get_ui();
                    saw_genus = true;
                } else {
                    throw ParseError(line_no, toks[t].col, "unknown attribute '" + key + "'");
                }
            }
            if (!saw_euler) throw ParseError(line_no, head.col, "missing euler attribute");
            vertex_index.emplace(vd.id, static_cast<int>(vertices.size()));
            vertices.push_back(std::move(vd));
        } else if (head.text == "e") {
            if (toks.size() != 3) throw ParseError(line_no, head.col, "expected 'e <id> <id>'");
            pending_edges.push_back({toks[1], toks[2], line_no});
        } else if (head.text == "cycle") {
            if (toks.size() < 2)
                throw ParseError(line_no, head.col, "expected 'cycle <name> [<id>=<int> ...]'");
            if (!valid_id(toks[1].text))
                throw ParseError(line_no, toks[1].col, "invalid cycle name '" + toks[1].text + "'");
            PendingCycle pc{toks[1], {}, line_no};
            for (size_t t = 2; t < toks.size(); ++t) pc.entries.push_back(toks[t]);
            pending_cycles.push_back(std::move(pc));
        } else {
            throw ParseError(line_no, head.col, "unknown directive '" + head.text + "'");
        }
    }

    if (vertices.empty()) throw ParseError(1, 1, "no vertices");

    std::vector<std::pair<int, int>> edges;
    for (const auto& pe : pending_edges) {
        auto resolve = [&](const Token& t) {
            auto it = vertex_index.find(t.text);
            if (it == vertex_index.end())
                throw ParseError(pe.line, t.col, "unknown vertex '" + t.text + "'");
            return it->second;
        };
        int u = resolve(pe.a), w = resolve(pe.b);
        if (u == w) throw ParseError(pe.line, pe.a.col, "self-loop at '" + pe.a.text + "'");
        edges.emplace_back(u, w);
    }

    ParsedFile out{PlumbingGraph::validated(name, vertices, edges), {}};

    std::unordered_map<std::string, size_t> cycle_names;
    for (const auto& pc : pending_cycles) {
        if (cycle_names.count(pc.name.text))
            throw ParseError(pc.line, pc.name.col, "duplicate cycle name '" + pc.name.text + "'");
        NamedCycle nc{pc.name.text, CycleVec(vertices.size(), Int(0))};
        std::vector<bool> seen(vertices.size(), false);
        for (const auto& ent : pc.entries) {
            size_t eq = ent.text.find('=');
            if (eq == std::string::npos)
                throw ParseError(pc.line, ent.col, "expected <id>=<int>, got '" + ent.text + "'");
            std::string id = ent.text.substr(0, eq), val = ent.text.substr(eq + 1);
            auto it = vertex_index.find(id);
            if (it == vertex_index.end())
                throw ParseError(pc.line, ent.col, "unknown vertex '" + id + "'");
            if (!integer_literal(val))
                throw ParseError(pc.line, ent.col, "bad coefficient '" + val + "'");
            if (seen[it->second])
                throw ParseError(pc.line, ent.col, "duplicate entry for '" + id + "'");
            seen[it->second] = true;
            nc.coeffs[it->second] = Int(val);
        }
        cycle_names.emplace(nc.name, out.cycles.size());
        out.cycles.push_back(std::move(nc));
    }
    return out;
}

std::string serialize_graph(const PlumbingGraph& g, const std::vector<NamedCycle>& cycles) {
    std::ostringstream os;
    if (!g.name().empty()) os << "graph " << g.name() << "\n";
    for (const auto& v : g.vertices())
        os << "v " << v.id << " euler=" << v.euler.get_str() << " genus=" << v.genus << "\n";
    for (const auto& [u, w] : g.edges())
        os << "e " << g.vertex(u).id << " " << g.vertex(w).id << "\n";
    for (const auto& c : cycles) {
        os << "cycle " << c.name;
        for (size_t i = 0; i < c.coeffs.size(); ++i)
            if (c.coeffs[i] != 0) os << " " << g.vertex(static_cast<int>(i)).id << "=" << c.coeffs[i].get_str();
        os << "\n";
    }
    return os.str();
}

std::string to_dot(const PlumbingGraph& g) {
    std::ostringstream os;
    os << "graph \"" << (g.name().empty() ? std::string("plumbing") : g.name()) << "\" {\n";
    os << "  node [shape=circle];\n";
    for (const auto& v : g.vertices())
        os << "  \"" << v.id << "\" [label=\"" << v.id << "\\ne=" << v.euler.get_str() << ",g="
           << v.genus << "\"];\n";
    for (const auto& [u, w] : g.edges())
        os << "  \"" << g.vertex(u).id << "\" -- \"" << g.vertex(w).id << "\";\n";
    os << "}\n";
    return os.str();
}

CycleMap CycleMap::identity(size_t n) {
    CycleMap cm;
    cm.rows = cm.cols = n;
    cm.m.assign(n, CycleVec(n, Int(0)));
    for (size_t i = 0; i < n; ++i) cm.m[i][i] = 1;
    return cm;
}

CycleMap CycleMap::compose(const CycleMap& outer, const CycleMap& inner) {
    if (outer.cols != inner.rows) throw DomainError("cycle map shape mismatch");
    CycleMap cm;
    cm.rows = outer.rows;
    cm.cols = inner.cols;
    cm.m.assign(cm.rows, CycleVec(cm.cols, Int(0)));
    for (size_t i = 0; i < cm.rows; ++i)
        for (size_t k = 0; k < outer.cols; ++k) {
            if (outer.m[i][k] == 0) continue;
            for (size_t j = 0; j < cm.cols; ++j)
                if (inner.m[k][j] != 0) cm.m[i][j] += outer.m[i][k] * inner.m[k][j];
        }
    return cm;
}

CycleVec CycleMap::apply(const CycleVec& x) const {
    if (x.size() != cols) throw DomainError("cycle map applied to wrong-sized cycle");
    CycleVec y(rows, Int(0));
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j)
            if (m[i][j] != 0) y[i] += m[i][j] * x[j];
    return y;
}

RatCycleVec CycleMap::apply(const RatCycleVec& x) const {
    if (x.size() != cols) throw DomainError("cycle map applied to wrong-sized cycle");
    RatCycleVec y(rows, Rat(0));
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j)
            if (m[i][j] != 0) y[i] += Rat(m[i][j]) * x[j];
    return y;
}

namespace {

// Shared tail of both blow-up kinds: extend the identity map by one row that
// gives the new vertex's coefficient as a linear form in the old ones.
CycleMap extend_by_row(size_t n_old, const CycleVec& row) {
    CycleMap cm = CycleMap::identity(n_old);
    cm.rows = n_old + 1;
    cm.m.push_back(row);
    return cm;
}

}  // namespace

BlowupResult blow_up_vertex(const PlumbingGraph& g, const std::string& vid) {
    const int v = g.require_index(vid);
    auto vertices = g.vertices();
    auto edges = g.edges();
    const std::string fresh = fresh_blowup_id(vertices);
    vertices[v].euler -= 1;
    vertices.push_back({fresh, Int(-1), 0});
    edges.emplace_back(v, static_cast<int>(vertices.size()) - 1);
    CycleVec row(g.size(), Int(0));
    row[v] = 1;  // pulled-back coefficient at the new vertex is l_v
    BlowupResult res{PlumbingGraph::validated(g.name(), std::move(vertices), std::move(edges)),
                     {BlowupRecord::Kind::vertex, vid, "", fresh},
                     extend_by_row(g.size(), row)};
    return res;
}

BlowupResult blow_up_edge(const PlumbingGraph& g, const std::string& uid, const std::string& wid) {
    const int u = g.require_index(uid);
    const int w = g.require_index(wid);
    auto vertices = g.vertices();
    auto edges = g.edges();
    auto it = std::find_if(edges.begin(), edges.end(), [&](const std::pair<int, int>& e) {
        return (e.first == u && e.second == w) || (e.first == w && e.second == u);
    });
    if (it == edges.end())
        throw DomainError("no edge between '" + uid + "' and '" + wid + "'");
    edges.erase(it);
    const std::string fresh = fresh_blowup_id(vertices);
    vertices[u].euler -= 1;
    vertices[w].euler -= 1;
    vertices.push_back({fresh, Int(-1), 0});
    const int nv = static_cast<int>(vertices.size()) - 1;
    edges.emplace_back(u, nv);
    edges.emplace_back(nv, w);
    CycleVec row(g.size(), Int(0));
    row[u] = 1;  // pulled-back coefficient at the new vertex is l_u + l_w
    row[w] = 1;
    BlowupResult res{PlumbingGraph::validated(g.name(), std::move(vertices), std::move(edges)),
                     {BlowupRecord::Kind::edge, uid, wid, fresh},
                     extend_by_row(g.size(), row)};
    return res;
}

BlowupSequence blow_up_sequence_at(const PlumbingGraph& g, const std::string& vid, unsigned times) {
    BlowupSequence seq{g, {}, CycleMap::identity(g.size())};
    std::string at = vid;
    for (unsigned k = 0; k < times; ++k) {
        BlowupResult step = blow_up_vertex(seq.graph, at);
        seq.pullback = CycleMap::compose(step.pullback, seq.pullback);
        at = step.record.new_vertex;
        seq.records.push_back(std::move(step.record));
        seq.graph = std::move(step.graph);
    }
    return seq;
}

Subconfiguration full_subgraph(const PlumbingGraph& g, const std::vector<std::string>& kept_ids) {
    if (kept_ids.empty()) throw DomainError("empty vertex subset");
    std::vector<bool> keep(g.size(), false);
    for (const auto& id : kept_ids) {
        int v = g.require_index(id);
        if (keep[v]) throw DomainError("duplicate vertex '" + id + "' in subset");
        keep[v] = true;
    }

    Subconfiguration sub;
    std::vector<int> local(g.size(), -1);  // parent index -> index among kept
    for (size_t v = 0; v < g.size(); ++v)
        if (keep[v]) {
            local[v] = static_cast<int>(sub.kept.size());
            sub.kept.push_back(static_cast<int>(v));
        }

    std::vector<std::pair<int, int>> induced;
    for (const auto& [u, w] : g.edges())
        if (keep[u] && keep[w]) induced.emplace_back(local[u], local[w]);

    int comps = 0;
    std::vector<int> label = component_labels(sub.kept.size(), induced, &comps);

    for (int c = 0; c < comps; ++c) {
        std::vector<VertexData> cv;
        std::vector<int> parent_idx;
        std::vector<int> to_comp(sub.kept.size(), -1);
        for (size_t k = 0; k < sub.kept.size(); ++k)
            if (label[k] == c) {
                to_comp[k] = static_cast<int>(cv.size());
                cv.push_back(g.vertex(sub.kept[k]));
                parent_idx.push_back(sub.kept[k]);
            }
        std::vector<std::pair<int, int>> ce;
        for (const auto& [u, w] : induced)
            if (label[u] == c) ce.emplace_back(to_comp[u], to_comp[w]);
        sub.components.push_back(PlumbingGraph::validated(g.name(), std::move(cv), std::move(ce)));
        sub.component_vertices.push_back(std::move(parent_idx));
    }
    return sub;
}

PlumbingGraph random_negdef_graph(unsigned long long seed, size_t n_vertices) {
    if (n_vertices == 0) throw DomainError("vertex count must be positive");
    SplitMix64 rng(seed);

    std::vector<std::pair<int, int>> edges;
    for (size_t i = 1; i < n_vertices; ++i)
        edges.emplace_back(static_cast<int>(rng.below(i)), static_cast<int>(i));
    if (n_vertices >= 2) {
        // A few extra edges; duplicates of tree edges give parallel edges.
        size_t extra = rng.below(n_vertices / 2 + 1);
        for (size_t k = 0; k < extra; ++k) {
            int u = static_cast<int>(rng.below(n_vertices));
            int w = static_cast<int>(rng.below(n_vertices));
            if (u == w) continue;
            edges.emplace_back(u, w);
        }
    }

    std::vector<size_t> deg(n_vertices, 0);
    for (const auto& [u, w] : edges) {
        ++deg[u];
        ++deg[w];
    }

    std::vector<VertexData> vertices(n_vertices);
    for (size_t v = 0; v < n_vertices; ++v) {
        vertices[v].id = "v" + std::to_string(v);
        // Strict diagonal dominance keeps the matrix negative definite; a
        // lone vertex gets euler <= -2.
        unsigned long long shift = rng.below(4) + (n_vertices == 1 ? 1 : 0);
        vertices[v].euler = -Int(static_cast<unsigned long>(deg[v] + 1 + shift));
        vertices[v].genus = rng.below(8) == 0 ? 1 : 0;
    }

    std::string name = "gen_s" + std::to_string(seed) + "_n" + std::to_string(n_vertices);
    return PlumbingGraph::validated(std::move(name), std::move(vertices), std::move(edges));
}

}  // namespace plumb
