// Command-line front end: file parsing, computation dispatch, text/JSON/DOT
// output.  Exit codes: 0 success, 1 domain error, 2 usage or parse error.

#include <cstdint>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "plumb/examples.hpp"
#include "plumb/invariants.hpp"

using json = nlohmann::ordered_json;
using namespace plumb;

namespace {

// ---------------------------------------------------------------- rendering

json json_int(const Int& v) {
    if (v.fits_slong_p()) return static_cast<std::int64_t>(v.get_si());
    return v.get_str();
}

json json_rat(const Rat& v) {
    if (v.get_den() == 1) return json_int(Int(v.get_num()));
    return v.get_str();  // reduced "p/q"
}

std::string rat_text(const Rat& v) { return v.get_str(); }

json json_cycle(const PlumbingGraph& g, const CycleVec& l) {
    json o = json::object();
    for (size_t v = 0; v < l.size(); ++v) o[g.vertex(static_cast<int>(v)).id] = json_int(l[v]);
    return o;
}

json json_cycle(const PlumbingGraph& g, const RatCycleVec& l) {
    json o = json::object();
    for (size_t v = 0; v < l.size(); ++v) o[g.vertex(static_cast<int>(v)).id] = json_rat(l[v]);
    return o;
}

// Coefficients in vertex order, space separated; the shape used by the docs.
std::string vec_text(const CycleVec& l) {
    std::string s;
    for (size_t v = 0; v < l.size(); ++v) {
        if (v) s += ' ';
        s += l[v].get_str();
    }
    return s;
}

std::string vec_text(const RatCycleVec& l) {
    std::string s;
    for (size_t v = 0; v < l.size(); ++v) {
        if (v) s += ' ';
        s += rat_text(l[v]);
    }
    return s;
}

std::string ids_text(const PlumbingGraph& g) {
    std::string s;
    for (size_t v = 0; v < g.size(); ++v) {
        if (v) s += ' ';
        s += g.vertex(static_cast<int>(v)).id;
    }
    return s;
}

// ------------------------------------------------------------ command state

struct Global {
    bool json_out = false;
    bool stable = false;
    bool oracle = false;
    std::string dot_path;
    unsigned threads = 1;
};

struct Result {
    std::string command;
    std::string graph;
    json payload = json::object();
    bool oracle_checked = false;
    std::vector<std::string> text;           // text-mode lines
    std::optional<std::string> raw_text;     // overrides text lines (file dumps)
    std::optional<PlumbingGraph> own_graph;  // --dot target when the command built one
    const PlumbingGraph* dot_graph = nullptr;
};

void line(Result& r, std::string s) { r.text.push_back(std::move(s)); }

std::string timestamp_utc() {
    std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

int emit(const Global& gl, const Result& r) {
    if (!gl.dot_path.empty()) {
        const PlumbingGraph* target = r.own_graph ? &*r.own_graph : r.dot_graph;
        if (target == nullptr) throw DomainError("--dot is not available for this command");
        std::ofstream out(gl.dot_path);
        if (!out) throw DomainError("cannot write '" + gl.dot_path + "'");
        out << to_dot(*target);
    }
    if (gl.json_out) {
        json top = json::object();
        top["command"] = r.command;
        top["graph"] = r.graph;
        top["payload"] = r.payload;
        top["oracle_checked"] = r.oracle_checked;
        if (!gl.stable) top["generated_at"] = timestamp_utc();
        std::cout << top.dump(2) << "\n";
    } else if (r.raw_text) {
        std::cout << *r.raw_text;
    } else {
        for (const auto& s : r.text) std::cout << s << "\n";
    }
    return 0;
}

// ------------------------------------------------------------ input loading

// The lattice member points back into `file`, so instances must stay put.
struct Loaded {
    ParsedFile file;
    IntersectionData lattice;
    explicit Loaded(ParsedFile f) : file(std::move(f)), lattice(file.graph) {}
    Loaded(const Loaded&) = delete;
    Loaded& operator=(const Loaded&) = delete;
};

ParsedFile load(const std::string& path) {
    std::string text;
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        text = ss.str();
    } else {
        std::ifstream in(path);
        if (!in) throw DomainError("cannot read '" + path + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    return parse_graph_file(text);
}

// -------------------------------------------------------- cycle expressions

// EXPR := ['-'] [RATIONAL '*'] BASE
// BASE := file cycle name | z_min | z_k | e | dual:<id> | "<id>=<rat>,..."
// File-declared names shadow the built-ins.
bool parse_rational(const std::string& s, Rat& out) {
    if (s.empty()) return false;
    size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    bool slash = false;
    for (size_t k = i; k < s.size(); ++k) {
        if (s[k] == '/') {
            if (slash || k == i || k + 1 == s.size()) return false;
            slash = true;
        } else if (!std::isdigit(static_cast<unsigned char>(s[k]))) {
            return false;
        }
    }
    out = Rat(s);
    out.canonicalize();
    return true;
}

RatCycleVec resolve_base(const Loaded& in, const std::string& base) {
    const PlumbingGraph& g = in.file.graph;
    for (const auto& nc : in.file.cycles)
        if (nc.name == base) return to_rat(nc.coeffs);
    if (base == "z_min" || base == "zmin") return to_rat(laufer_minimal_cycle(in.lattice).result);
    if (base == "z_k" || base == "zk") return in.lattice.canonical_cycle();
    if (base == "e") return RatCycleVec(g.size(), Rat(1));
    if (base.rfind("dual:", 0) == 0)
        return in.lattice.dual_basis_cycle(g.require_index(base.substr(5)));
    if (base.find('=') != std::string::npos) {
        RatCycleVec l(g.size(), Rat(0));
        std::stringstream ss(base);
        std::string item;
        while (std::getline(ss, item, ',')) {
            size_t eq = item.find('=');
            if (eq == std::string::npos || eq == 0)
                throw DomainError("bad cycle entry '" + item + "'");
            int v = g.require_index(item.substr(0, eq));
            Rat c;
            if (!parse_rational(item.substr(eq + 1), c))
                throw DomainError("bad coefficient in '" + item + "'");
            l[v] = c;
        }
        return l;
    }
    throw DomainError("unknown cycle '" + base + "'");
}

RatCycleVec resolve_cycle(const Loaded& in, std::string expr) {
    Rat scale(1);
    if (!expr.empty() && expr[0] == '-' &&
        !(expr.size() > 1 && std::isdigit(static_cast<unsigned char>(expr[1])))) {
        scale = -1;
        expr.erase(0, 1);
    }
    size_t star = expr.find('*');
    if (star != std::string::npos) {
        Rat k;
        if (parse_rational(expr.substr(0, star), k)) {
            scale *= k;
            expr.erase(0, star + 1);
        }
    }
    RatCycleVec l = resolve_base(in, expr);
    for (auto& c : l) c *= scale;
    return l;
}

CycleVec integral_cycle(const Loaded& in, const std::string& expr) {
    RatCycleVec l = resolve_cycle(in, expr);
    CycleVec out(l.size());
    for (size_t v = 0; v < l.size(); ++v) {
        if (l[v].get_den() != 1) throw DomainError("cycle '" + expr + "' is not integral");
        out[v] = l[v].get_num();
    }
    return out;
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(item);
    return out;
}

// ------------------------------------------------------------- sub-payloads

json certificate_json(const PlumbingGraph& g, const SearchCertificate& c) {
    json o = json::object();
    o["witness_chi"] = json_int(c.witness_chi);
    o["witness"] = json_cycle(g, c.witness);
    o["center"] = json_cycle(g, c.center);
    o["radius"] = json_rat(c.radius);
    o["bound"] = json_cycle(g, c.bound);
    o["volume"] = json_int(certified_volume(c));
    return o;
}

json minchi_json(const PlumbingGraph& g, const MinChiResult& r) {
    json o = json::object();
    o["minimum"] = json_int(r.minimum);
    o["minimizer_count"] = json_int(r.minimizer_count);
    o["min_minimizer"] = json_cycle(g, r.min_minimizer);
    o["max_minimizer"] = json_cycle(g, r.max_minimizer);
    o["certificate"] = certificate_json(g, r.certificate);
    return o;
}

json moves_json(const std::vector<BlowupRecord>& moves) {
    json a = json::array();
    for (const auto& m : moves) {
        json o = json::object();
        o["kind"] = m.kind == BlowupRecord::Kind::vertex ? "vertex" : "edge";
        o["at"] = m.kind == BlowupRecord::Kind::vertex ? json(m.at_u)
                                                       : json(json::array({m.at_u, m.at_w}));
        o["new_vertex"] = m.new_vertex;
        a.push_back(o);
    }
    return a;
}

void check_oracle_match(const MinChiResult& engine, const MinChiResult& oracle) {
    if (engine.minimum != oracle.minimum || engine.minimizer_count != oracle.minimizer_count ||
        engine.min_minimizer != oracle.min_minimizer ||
        engine.max_minimizer != oracle.max_minimizer)
        throw DomainError("oracle mismatch: search min " + engine.minimum.get_str() + " (count " +
                          engine.minimizer_count.get_str() + ") vs oracle " +
                          oracle.minimum.get_str() + " (count " +
                          oracle.minimizer_count.get_str() + ")");
}

// ----------------------------------------------------------------- commands

Result cmd_validate(const Loaded& in) {
    const PlumbingGraph& g = in.file.graph;
    Result r{"validate", g.name()};
    QhsReport qr = qhs_link(g);
    r.payload["vertices"] = g.size();
    r.payload["edges"] = g.edges().size();
    r.payload["negative_definite"] = true;
    json piv = json::array();
    for (const auto& p : in.lattice.pivots()) piv.push_back(json_rat(p));
    r.payload["pivots"] = piv;
    r.payload["qhs_link"] = qr.qhs;
    r.payload["qhs_reason"] = qr.reason;
    r.payload["discriminant_group_order"] = json_int(in.lattice.discriminant_order());
    line(r, "graph '" + g.name() + "': " + std::to_string(g.size()) + " vertices, " +
                std::to_string(g.edges().size()) + " edges");
    std::string pv;
    for (const auto& p : in.lattice.pivots()) pv += " " + rat_text(p);
    line(r, "negative definite: yes (pivots" + pv + ")");
    line(r, std::string("rational homology sphere link: ") +
                (qr.qhs ? "yes" : "no (" + qr.reason + ")"));
    line(r, "discriminant group order: " + in.lattice.discriminant_order().get_str());
    return r;
}

Result cmd_invariants(const Loaded& in, const Global& gl) {
    const PlumbingGraph& g = in.file.graph;
    Result r{"invariants", g.name()};
    MinChiOptions opt{gl.threads, false};
    ClassificationReport c = classify(in.lattice, opt);
    if (gl.oracle) {
        MinChiResult orc = min_chi_oracle(in.lattice, MinChiRegion::all());
        if (orc.minimum != c.min_chi_unbounded)
            throw DomainError("oracle mismatch: min chi " + c.min_chi_unbounded.get_str() +
                              " vs oracle " + orc.minimum.get_str());
        r.oracle_checked = true;
    }
    r.payload["min_chi"] = json_int(c.min_chi_unbounded);
    r.payload["p_a"] = json_int(c.p_a);
    r.payload["verdict"] = to_string(c.verdict);
    r.payload["reduction_bound"] = json_int(c.reduction_bound);
    r.payload["qhs_link"] = c.qhs_link;
    r.payload["discriminant_group_order"] = json_int(c.discriminant_order);
    r.payload["z_min"] = json_cycle(g, c.z_min);
    r.payload["chi_z_min"] = json_int(c.chi_z_min);
    r.payload["z_k"] = json_cycle(g, in.lattice.canonical_cycle());
    r.payload["z_k_integral"] = in.lattice.canonical_integral();
    line(r, "vertex order: " + ids_text(g));
    line(r, "min chi: " + c.min_chi_unbounded.get_str());
    line(r, "p_a: " + c.p_a.get_str());
    line(r, "verdict: " + to_string(c.verdict));
    line(r, "reduction number bound: " + c.reduction_bound.get_str());
    line(r, std::string("qhs link: ") + (c.qhs_link ? "yes" : "no"));
    line(r, "discriminant group order: " + c.discriminant_order.get_str());
    line(r, "z_min: " + vec_text(c.z_min));
    line(r, "chi(z_min): " + c.chi_z_min.get_str());
    line(r, "z_k: " + vec_text(in.lattice.canonical_cycle()) +
                (in.lattice.canonical_integral() ? " (integral)" : " (not integral)"));
    return r;
}

Result cmd_minchi(const Loaded& in, const Global& gl, const std::string& box_expr, bool witness,
                  bool count) {
    const PlumbingGraph& g = in.file.graph;
    Result r{"minchi", g.name()};
    MinChiRegion region = MinChiRegion::all();
    if (!box_expr.empty()) region = MinChiRegion::below(integral_cycle(in, box_expr));
    MinChiOptions opt{gl.threads, false};
    MinChiResult mc = min_chi(in.lattice, region, opt);
    if (gl.oracle || count) {
        check_oracle_match(mc, min_chi_oracle(in.lattice, region));
        r.oracle_checked = true;
    }
    r.payload = minchi_json(g, mc);
    r.payload["region"] = box_expr.empty() ? "all" : "box";
    line(r, "vertex order: " + ids_text(g));
    line(r, "min chi: " + mc.minimum.get_str() +
                (box_expr.empty() ? " over all effective nonzero cycles"
                                  : " over 0 < l <= " + vec_text(region.box)));
    line(r, "minimizer count: " + mc.minimizer_count.get_str() +
                (r.oracle_checked ? " (oracle-confirmed)" : ""));
    if (witness) {
        line(r, "smallest minimizer: " + vec_text(mc.min_minimizer));
        line(r, "largest minimizer:  " + vec_text(mc.max_minimizer));
    }
    line(r, "certified box: " + vec_text(mc.certificate.bound) + " (" +
                certified_volume(mc.certificate).get_str() + " points)");
    return r;
}

Result cmd_laufer(const Loaded& in) {
    const PlumbingGraph& g = in.file.graph;
    Result r{"laufer", g.name()};
    LauferTrace t = laufer_minimal_cycle(in.lattice);
    r.payload["z_min"] = json_cycle(g, t.result);
    r.payload["chi_z_min"] = json_int(in.lattice.chi(t.result));
    json steps = json::array();
    for (const auto& s : t.steps) {
        json o = json::object();
        o["vertex"] = g.vertex(s.vertex).id;
        o["pairing"] = json_int(s.pairing_value);
        steps.push_back(o);
    }
    r.payload["steps"] = steps;
    r.payload["step_count"] = t.steps.size();
    line(r, "vertex order: " + ids_text(g));
    for (size_t i = 0; i < t.steps.size(); ++i)
        line(r, "step " + std::to_string(i + 1) + ": add " + g.vertex(t.steps[i].vertex).id +
                    " (pairing " + t.steps[i].pairing_value.get_str() + ")");
    line(r, "z_min: " + vec_text(t.result));
    line(r, "chi(z_min): " + in.lattice.chi(t.result).get_str());
    return r;
}

Result cmd_zk(const Loaded& in) {
    const PlumbingGraph& g = in.file.graph;
    Result r{"zk", g.name()};
    const RatCycleVec& zk = in.lattice.canonical_cycle();
    r.payload["z_k"] = json_cycle(g, zk);
    r.payload["integral"] = in.lattice.canonical_integral();
    r.payload["floor"] = json_cycle(g, in.lattice.floor_cycle(zk));
    line(r, vec_text(zk));
    return r;
}

Result cmd_dual(const Loaded& in, const std::string& id) {
    const PlumbingGraph& g = in.file.graph;
    Result r{"dual", g.name()};
    int v = g.require_index(id);
    RatCycleVec d = in.lattice.dual_basis_cycle(v);
    r.payload["vertex"] = id;
    r.payload["cycle"] = json_cycle(g, d);
    r.payload["self_pairing"] = json_rat(in.lattice.pairing(d, d));
    line(r, vec_text(d));
    return r;
}

Result cmd_chi(const Loaded& in, const std::string& expr) {
    const PlumbingGraph& g = in.file.graph;
    Result r{"chi", g.name()};
    RatCycleVec l = resolve_cycle(in, expr);
    Rat value = in.lattice.chi(l);
    bool integral = true;
    for (const auto& c : l) integral = integral && c.get_den() == 1;
    r.payload["cycle"] = json_cycle(g, l);
    r.payload["chi"] = json_rat(value);
    r.payload["cycle_integral"] = integral;
    line(r, rat_text(value));
    return r;
}

Result cmd_support(const Loaded& in, const std::string& expr) {
    const PlumbingGraph& g = in.file.graph;
    Result r{"support", g.name()};
    RatCycleVec l = resolve_cycle(in, expr);
    IntersectionData::EstarSupport s = in.lattice.estar_support(l);
    json ids = json::array();
    for (int v : s.support) ids.push_back(g.vertex(v).id);
    r.payload["support"] = ids;
    r.payload["dual_coefficients"] = json_cycle(g, s.dual_coeffs);
    r.payload["in_dual_lattice"] = s.in_dual_lattice;
    std::string sup;
    for (int v : s.support) sup += (sup.empty() ? "" : " ") + g.vertex(v).id;
    line(r, "support: " + (sup.empty() ? "(empty)" : sup));
    line(r, "dual coefficients: " + vec_text(s.dual_coeffs));
    line(r, std::string("in dual lattice: ") + (s.in_dual_lattice ? "yes" : "no"));
    return r;
}

Result cmd_ecadim(const Loaded& in, const std::string& lp_expr, const std::string& z_expr) {
    const PlumbingGraph& g = in.file.graph;
    Result r{"ecadim", g.name()};
    RatCycleVec lp = resolve_cycle(in, lp_expr);
    CycleVec Z = integral_cycle(in, z_expr);
    IntersectionData::EcaDim d = in.lattice.eca_dimension(lp, Z);
    r.payload["lp"] = json_cycle(g, lp);
    r.payload["z"] = json_cycle(g, Z);
    r.payload["empty"] = d.empty;
    r.payload["dim"] = json_rat(d.dim);
    line(r, d.empty ? "empty" : "dim " + rat_text(d.dim));
    return r;
}

Result cmd_transform(const Loaded& in, const std::string& bu_vertex, unsigned times,
                     const std::string& bu_edge, const std::string& subgraph,
                     const std::string& out_path) {
    const PlumbingGraph& g = in.file.graph;
    Result r{"transform", g.name()};
    int modes = (!bu_vertex.empty()) + (!bu_edge.empty()) + (!subgraph.empty());
    if (modes != 1)
        throw DomainError("exactly one of --blowup-vertex, --blowup-edge, --subgraph required");

    if (!subgraph.empty()) {
        Subconfiguration sub = full_subgraph(g, split_commas(subgraph));
        json comps = json::array();
        for (size_t k = 0; k < sub.components.size(); ++k) {
            std::string path = out_path + ".c" + std::to_string(k);
            std::ofstream out(path);
            if (!out) throw DomainError("cannot write '" + path + "'");
            out << serialize_graph(sub.components[k]);
            json o = json::object();
            o["file"] = path;
            json ids = json::array();
            for (int v : sub.component_vertices[k]) ids.push_back(g.vertex(v).id);
            o["vertices"] = ids;
            comps.push_back(o);
            std::string idtext;
            for (int v : sub.component_vertices[k])
                idtext += (idtext.empty() ? "" : " ") + g.vertex(v).id;
            line(r, "component " + std::to_string(k) + " -> " + path + " (" + idtext + ")");
        }
        r.payload["mode"] = "subgraph";
        r.payload["components"] = comps;
        return r;
    }

    BlowupSequence seq = [&] {
        if (!bu_vertex.empty()) return blow_up_sequence_at(g, bu_vertex, times);
        auto ends = split_commas(bu_edge);
        if (ends.size() != 2) throw DomainError("--blowup-edge wants 'u,w'");
        BlowupResult one = blow_up_edge(g, ends[0], ends[1]);
        return BlowupSequence{one.graph, {one.record}, one.pullback};
    }();

    std::vector<NamedCycle> pulled;
    json pb = json::object();
    for (const auto& nc : in.file.cycles) {
        CycleVec img = seq.pullback.apply(nc.coeffs);
        pulled.push_back({nc.name, img});
        pb[nc.name] = json_cycle(seq.graph, img);
        line(r, "pullback " + nc.name + ": " + vec_text(img));
    }
    std::ofstream out(out_path);
    if (!out) throw DomainError("cannot write '" + out_path + "'");
    out << serialize_graph(seq.graph, pulled);
    r.payload["mode"] = bu_vertex.empty() ? "blowup_edge" : "blowup_vertex";
    r.payload["moves"] = moves_json(seq.records);
    r.payload["pullbacks"] = pb;
    r.payload["file"] = out_path;
    r.payload["result_vertices"] = seq.graph.size();
    line(r, "wrote " + out_path + " (" + std::to_string(seq.graph.size()) + " vertices)");
    r.own_graph = std::move(seq.graph);
    return r;
}

Result cmd_bounds(const Loaded& in, const Global& gl, const std::string& z_expr,
                  const std::string& off_ids) {
    const PlumbingGraph& g = in.file.graph;
    Result r{"bounds", g.name()};
    MinChiOptions opt{gl.threads, false};
    CycleVec Z = integral_cycle(in, z_expr);
    StabilityBound sb = stability_bound(in.lattice, Z, opt);
    GenericH1 h1 = generic_h1(g, Z, opt);
    r.payload["label"] = "generic-structure/topological bound";
    r.payload["z"] = json_cycle(g, Z);
    r.payload["stability_bound"] = json_int(sb.bound);
    r.payload["min_chi_in_box"] = json_int(sb.search.minimum);
    r.payload["generic_h1"] = json_int(h1.value);
    json per = json::array();
    for (size_t k = 0; k < h1.per_component.size(); ++k) {
        json o = json::object();
        json ids = json::array();
        for (int v : h1.support.component_vertices[k]) ids.push_back(g.vertex(v).id);
        o["vertices"] = ids;
        o["value"] = json_int(h1.per_component[k]);
        per.push_back(o);
    }
    r.payload["generic_h1_components"] = per;
    line(r, "generic-structure/topological bound values for Z = " + vec_text(Z));
    line(r, "stability bound 1 - min chi: " + sb.bound.get_str());
    line(r, "generic h1(O_Z): " + h1.value.get_str());
    for (size_t k = 0; k < h1.per_component.size(); ++k) {
        std::string idtext;
        for (int v : h1.support.component_vertices[k])
            idtext += (idtext.empty() ? "" : " ") + g.vertex(v).id;
        line(r, "  component {" + idtext + "}: " + h1.per_component[k].get_str());
    }
    if (!off_ids.empty()) {
        std::vector<int> off;
        json off_json = json::array();
        for (const auto& id : split_commas(off_ids)) {
            off.push_back(g.require_index(id));
            off_json.push_back(id);
        }
        Int e = generic_e_Z(g, Z, off, opt);
        r.payload["off_vertices"] = off_json;
        r.payload["generic_e_z"] = json_int(e);
        line(r, "generic e_Z (off " + off_ids + "): " + e.get_str());
    }
    return r;
}

Result cmd_spectrum(const Loaded& in, const Global& gl, unsigned max_blowups,
                    unsigned long long cap, const std::string& realize, unsigned budget) {
    const PlumbingGraph& g = in.file.graph;
    Result r{"spectrum", g.name()};
    MinChiOptions opt{gl.threads, false};
    if (!realize.empty()) {
        Int q(realize);
        RealizeResult rr = realize_q(g, q, budget, opt);
        r.payload["mode"] = "realize";
        r.payload["q"] = json_int(q);
        r.payload["found"] = rr.found;
        r.payload["failure"] = rr.failure;
        r.payload["moves"] = moves_json(rr.moves);
        json kept = json::array();
        for (const auto& id : rr.kept) kept.push_back(id);
        r.payload["kept"] = kept;
        json stages = json::array();
        for (const auto& st : rr.stages) {
            json o = json::object();
            json ids = json::array();
            for (const auto& id : st.kept) ids.push_back(id);
            o["kept"] = ids;
            o["p_a"] = json_int(st.p_a);
            stages.push_back(o);
        }
        r.payload["stages"] = stages;
        line(r, "realize p_a = " + q.get_str() + ": " + (rr.found ? "found" : "failed"));
        if (!rr.found) line(r, "  " + rr.failure);
        for (size_t k = 0; k < rr.stages.size(); ++k) {
            std::string idtext;
            for (const auto& id : rr.stages[k].kept) idtext += (idtext.empty() ? "" : " ") + id;
            line(r, "stage " + std::to_string(k) + ": keep {" + idtext + "}, p_a = " +
                        rr.stages[k].p_a.get_str());
        }
        line(r, "blow-up moves: " + std::to_string(rr.moves.size()));
        return r;
    }
    GenusSpectrum sp = subgraph_genus_spectrum(g, max_blowups, cap, opt);
    r.payload["mode"] = "spectrum";
    r.payload["max_blowups"] = max_blowups;
    json vals = json::array();
    for (const auto& v : sp.values) vals.push_back(json_int(v));
    r.payload["values"] = vals;
    json wits = json::array();
    for (const auto& w : sp.witnesses) {
        json o = json::object();
        o["p_a"] = json_int(w.p_a);
        o["moves"] = moves_json(w.moves);
        json kept = json::array();
        for (const auto& id : w.kept) kept.push_back(id);
        o["kept"] = kept;
        wits.push_back(o);
    }
    r.payload["witnesses"] = wits;
    std::string vt;
    for (const auto& v : sp.values) vt += (vt.empty() ? "" : " ") + v.get_str();
    line(r, "p_a spectrum (<= " + std::to_string(max_blowups) + " blow-ups): {" + vt + "}");
    for (const auto& w : sp.witnesses) {
        std::string idtext;
        for (const auto& id : w.kept) idtext += (idtext.empty() ? "" : " ") + id;
        line(r, "  p_a " + w.p_a.get_str() + ": keep {" + idtext + "} after " +
                    std::to_string(w.moves.size()) + " blow-ups");
    }
    return r;
}

Result graph_dump(const char* command, PlumbingGraph g) {
    Result r{command, g.name()};
    r.payload["name"] = g.name();
    r.payload["vertices"] = g.size();
    r.payload["edges"] = g.edges().size();
    r.payload["file"] = serialize_graph(g);
    r.raw_text = serialize_graph(g);
    return r;
}

PlumbingGraph make_example(const std::string& name, unsigned n, const std::string& weight) {
    if (name == "dpp") return example_dpp();
    if (name == "star") return example_star(n, Int(weight));
    return example_ade(name);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact plumbing-graph toolkit"};
    app.require_subcommand(1);

    Global gl;
    app.add_flag("--json", gl.json_out, "emit JSON instead of text");
    app.add_flag("--stable", gl.stable, "omit the generated_at timestamp");
    app.add_flag("--oracle", gl.oracle, "cross-check minima against the enumeration oracle");
    app.add_option("--dot", gl.dot_path, "write Graphviz DOT of the graph to this file");
    app.add_option("--threads", gl.threads, "worker threads for the chi search")
        ->check(CLI::Range(1u, 256u));

    std::string file, box_expr, dual_id, chi_expr, sup_expr, eca_lp, eca_z;
    std::string bu_vertex, bu_edge, subgraph, out_path, z_expr, off_ids, realize;
    std::string ex_name, star_weight = "20";
    bool witness = false, count = false;
    unsigned times = 1, max_blowups = 0, budget = 16, star_n = 2, gen_vertices = 6;
    unsigned long long subset_cap = 1ULL << 15, gen_seed = 1;

    auto* validate = app.add_subcommand("validate", "parse and certify a graph file");
    validate->add_option("file", file, "graph file, or - for stdin")->required();

    auto* invariants = app.add_subcommand("invariants", "classification report");
    invariants->add_option("file", file)->required();

    auto* minchi = app.add_subcommand("minchi", "minimize chi over effective cycles");
    minchi->add_option("file", file)->required();
    minchi->add_option("--box", box_expr, "restrict to 0 < l <= box (cycle expression)");
    minchi->add_flag("--witness", witness, "print the extreme minimizers");
    minchi->add_flag("--count", count, "confirm the minimizer count by enumeration");

    auto* laufer = app.add_subcommand("laufer", "minimal cycle with its computation trace");
    laufer->add_option("file", file)->required();

    auto* zk = app.add_subcommand("zk", "canonical cycle");
    zk->add_option("file", file)->required();

    auto* dual = app.add_subcommand("dual", "dual basis cycle of a vertex");
    dual->add_option("file", file)->required();
    dual->add_option("vertex", dual_id, "vertex id")->required();

    auto* chi = app.add_subcommand("chi", "Riemann-Roch chi of a cycle");
    chi->add_option("file", file)->required();
    chi->add_option("cycle", chi_expr, "cycle expression")->required();

    auto* support = app.add_subcommand("support", "dual-basis support of a cycle");
    support->add_option("file", file)->required();
    support->add_option("cycle", sup_expr, "cycle expression")->required();

    auto* ecadim = app.add_subcommand("ecadim", "dimension of the effective Cartier space");
    ecadim->add_option("file", file)->required();
    ecadim->add_option("lp", eca_lp, "dual-lattice cycle expression")->required();
    ecadim->add_option("Z", eca_z, "integral cycle expression")->required();

    auto* transform = app.add_subcommand("transform", "blow-up and subgraph rewriting");
    transform->add_option("file", file)->required();
    transform->add_option("--blowup-vertex", bu_vertex, "blow up at this vertex");
    transform->add_option("--times", times, "iterate the vertex blow-up")->check(CLI::Range(1u, 64u));
    transform->add_option("--blowup-edge", bu_edge, "blow up an edge 'u,w'");
    transform->add_option("--subgraph", subgraph, "keep these vertices (comma separated)");
    transform->add_option("-o,--out", out_path, "output file (components get .c<k>)")->required();

    auto* bounds = app.add_subcommand("bounds", "stability and cohomology bounds");
    bounds->add_option("file", file)->required();
    bounds->add_option("--Z", z_expr, "integral effective cycle expression")->required();
    bounds->add_option("--I", off_ids, "dual support vertices for e_Z (comma separated)");

    auto* spectrum = app.add_subcommand("spectrum", "subgraph arithmetic-genus spectrum");
    spectrum->add_option("file", file)->required();
    spectrum->add_option("--max-blowups", max_blowups, "blow-up depth")->check(CLI::Range(0u, 8u));
    spectrum->add_option("--cap", subset_cap, "subset enumeration cap");
    spectrum->add_option("--realize", realize, "target p_a for realize mode")->check(CLI::Number);
    spectrum->add_option("--budget", budget, "blow-up budget for realize mode");

    auto* example = app.add_subcommand("example", "emit a built-in example graph");
    example->add_option("name", ex_name, "dpp | star | a<k> | d<k> | e6 | e7 | e8")->required();
    example->add_option("--n", star_n, "star branch count")->check(CLI::Range(2u, 64u));
    example->add_option("--N", star_weight, "star weight N (euler -N)")->check(CLI::Number);

    auto* gen = app.add_subcommand("gen", "emit a deterministic random graph");
    gen->add_option("--seed", gen_seed, "rng seed");
    gen->add_option("--vertices", gen_vertices, "vertex count")->check(CLI::Range(1u, 64u));

    for (auto* s : app.get_subcommands({})) s->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        Result r;
        std::optional<Loaded> in;
        std::optional<PlumbingGraph> made;
        if (example->parsed() || gen->parsed()) {
            made = example->parsed() ? make_example(ex_name, star_n, star_weight)
                                     : random_negdef_graph(gen_seed, gen_vertices);
        } else {
            in.emplace(load(file));
        }

        if (validate->parsed()) r = cmd_validate(*in);
        else if (invariants->parsed()) r = cmd_invariants(*in, gl);
        else if (minchi->parsed()) r = cmd_minchi(*in, gl, box_expr, witness, count);
        else if (laufer->parsed()) r = cmd_laufer(*in);
        else if (zk->parsed()) r = cmd_zk(*in);
        else if (dual->parsed()) r = cmd_dual(*in, dual_id);
        else if (chi->parsed()) r = cmd_chi(*in, chi_expr);
        else if (support->parsed()) r = cmd_support(*in, sup_expr);
        else if (ecadim->parsed()) r = cmd_ecadim(*in, eca_lp, eca_z);
        else if (transform->parsed())
            r = cmd_transform(*in, bu_vertex, times, bu_edge, subgraph, out_path);
        else if (bounds->parsed()) r = cmd_bounds(*in, gl, z_expr, off_ids);
        else if (spectrum->parsed()) r = cmd_spectrum(*in, gl, max_blowups, subset_cap, realize, budget);
        else if (example->parsed() || gen->parsed())
            r = graph_dump(example->parsed() ? "example" : "gen", *made);

        if (r.dot_graph == nullptr) r.dot_graph = made ? &*made : &in->file.graph;
        return emit(gl, r);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
