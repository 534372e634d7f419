#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

const fs::path kTmp = fs::temp_directory_path() / "plumb_cli_tests";

// Executes the CLI with the given arguments; stdout and stderr are captured
// separately, the exit code is the process status.
Run run(const std::string& args) {
    fs::create_directories(kTmp);
    fs::path errfile = kTmp / "stderr.txt";
    std::string cmd = std::string(PLUMB_CLI_PATH) + " " + args + " 2>" + errfile.string();
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    int status = pclose(pipe);
    std::ifstream ein(errfile);
    std::string err((std::istreambuf_iterator<char>(ein)), std::istreambuf_iterator<char>());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out, err};
}

std::string write_file(const std::string& name, const std::string& text) {
    fs::create_directories(kTmp);
    fs::path p = kTmp / name;
    std::ofstream out(p);
    out << text;
    return p.string();
}

std::string fixture(const std::string& name, const std::string& exampleArgs) {
    Run r = run("example " + exampleArgs);
    REQUIRE(r.code == 0);
    return write_file(name, r.out);
}

json payload(const std::string& args) {
    Run r = run(args + " --json --stable");
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    return j["payload"];
}

}  // namespace

TEST_CASE("example fixtures parse and validate") {
    std::string dpp = fixture("dpp.graph", "dpp");
    Run v = run("validate " + dpp);
    CHECK(v.code == 0);
    CHECK(v.out.find("10 vertices, 9 edges") != std::string::npos);
    CHECK(v.out.find("rational homology sphere link: yes") != std::string::npos);
    CHECK(v.out.find("discriminant group order: 3") != std::string::npos);

    std::string star = fixture("star3.graph", "star --n 3 --N 20");
    Run sv = run("validate " + star);
    CHECK(sv.code == 0);
    CHECK(sv.out.find("13 vertices") != std::string::npos);
}

TEST_CASE("documented text outputs") {
    std::string a2 = fixture("a2.graph", "a2");
    CHECK(run("dual " + a2 + " a1").out == "2/3 1/3\n");
    std::string star = fixture("star2.graph", "star --n 2 --N 20");
    CHECK(run("chi " + star + " z_min").out == "-1\n");
    std::string mone = write_file("mone.graph", "graph g\nv a euler=-1\n");
    CHECK(run("zk " + mone).out == "-1\n");
    CHECK(run("chi " + a2 + " a1=2/3,a2=1/3").out == "1/3\n");
    CHECK(run("chi " + a2 + " 3*z_min").out == "9\n");  // Z_K = 0, so chi(3Z) = 9
    std::string dpp = fixture("dpp.graph", "dpp");
    CHECK(run("chi " + dpp + " 3*z_min").out == "3\n");
    CHECK(run("chi " + a2 + " -- -z_k").out == "0\n");
    CHECK(run("ecadim " + a2 + " -- -dual:a1 z_min").out == "dim 1\n");
    CHECK(run("ecadim " + a2 + " dual:a1 z_min").out == "empty\n");
}

TEST_CASE("json payloads carry the same numbers as the text") {
    std::string dpp = fixture("dpp.graph", "dpp");
    json inv = payload("invariants " + dpp);
    CHECK(inv["min_chi"] == -1);
    CHECK(inv["p_a"] == 2);
    CHECK(inv["verdict"] == "general");
    CHECK(inv["reduction_bound"] == 3);
    CHECK(inv["qhs_link"] == true);
    CHECK(inv["discriminant_group_order"] == 3);
    CHECK(inv["z_min"]["c1"] == 6);
    CHECK(inv["z_k_integral"] == true);
    Run text = run("invariants " + dpp);
    CHECK(text.out.find("min chi: -1") != std::string::npos);
    CHECK(text.out.find("reduction number bound: 3") != std::string::npos);

    json mc = payload("minchi " + dpp);
    CHECK(mc["minimum"] == -1);
    CHECK(mc["minimizer_count"] == 256);
    CHECK(mc["region"] == "all");
    CHECK(mc["certificate"]["volume"] == 1239040000);
    CHECK(mc["max_minimizer"]["c1"] == 12);

    json lf = payload("laufer " + dpp);
    CHECK(lf["step_count"] == 16);
    CHECK(lf["chi_z_min"] == -1);

    json va = payload("validate " + dpp);
    CHECK(va["pivots"].size() == 10);
    CHECK(va["negative_definite"] == true);
}

TEST_CASE("integers beyond int64 serialize as decimal strings") {
    std::string big = write_file("big.graph",
                                 "graph big\n"
                                 "v a euler=-8000000000000000000\n"
                                 "v b euler=-2\n"
                                 "e a b\n");
    // det I = 16e18 - 1 and chi(3E) = 24e18 + 3 overflow int64 (hand-derived:
    // (E,E) = -8e18, (E,Z_K) = -8e18 + 2).
    json va = payload("validate " + big);
    CHECK(va["discriminant_group_order"].is_string());
    CHECK(va["discriminant_group_order"] == "15999999999999999999");
    json ch = payload("chi " + big + " 3*e");
    CHECK(ch["chi"].is_string());
    CHECK(ch["chi"] == "24000000000000000003");
    CHECK(run("chi " + big + " 3*e").out == "24000000000000000003\n");
}

TEST_CASE("boxed minchi cross-checks against the enumeration") {
    std::string dpp = fixture("dpp.graph", "dpp");
    Run r = run("minchi " + dpp + " --box z_min --count --json --stable");
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["payload"]["minimum"] == -1);
    CHECK(j["payload"]["region"] == "box");
    CHECK(j["oracle_checked"] == true);
    CHECK(run("minchi " + dpp + " --box zero=1 --json").code == 1);  // unknown vertex
}

TEST_CASE("oracle flag behavior") {
    std::string a2 = fixture("a2.graph", "a2");
    Run ok = run("invariants " + a2 + " --oracle --json --stable");
    CHECK(ok.code == 0);
    CHECK(json::parse(ok.out)["oracle_checked"] == true);
    // The dpp certified box exceeds the default enumeration cap, so an oracle
    // cross-check is refused rather than silently skipped.
    std::string dpp = fixture("dpp.graph", "dpp");
    Run big = run("invariants " + dpp + " --oracle");
    CHECK(big.code == 1);
    CHECK(big.err.find("enumeration cap exceeded") != std::string::npos);
}

TEST_CASE("stable output is byte identical, timestamps are optional") {
    std::string a2 = fixture("a2.graph", "a2");
    Run a = run("invariants " + a2 + " --json --stable");
    Run b = run("invariants " + a2 + " --json --stable");
    CHECK(a.out == b.out);
    CHECK(a.out.find("generated_at") == std::string::npos);
    Run c = run("invariants " + a2 + " --json");
    CHECK(c.out.find("generated_at") != std::string::npos);
    Run t1 = run("minchi " + a2 + " --witness");
    Run t2 = run("minchi " + a2 + " --witness");
    CHECK(t1.out == t2.out);
}

TEST_CASE("exit code contract") {
    CHECK(run("validate " + write_file("empty.graph", "")).code == 2);
    CHECK(run("validate " + write_file("pos.graph", "graph x\nv a euler=1\n")).code == 1);
    CHECK(run("validate " + write_file("disc.graph",
                                       "graph x\nv a euler=-2\nv b euler=-2\n")).code == 1);
    CHECK(run("validate " + write_file("loop.graph", "graph x\nv a euler=-2\ne a a\n")).code == 2);
    CHECK(run("validate " + (kTmp / "does_not_exist.graph").string()).code == 1);
    std::string a2 = fixture("a2.graph", "a2");
    CHECK(run("dual " + a2 + " zz").code == 1);      // unknown vertex
    CHECK(run("chi " + a2 + " nope").code == 1);     // unknown cycle
    CHECK(run("bounds " + a2).code == 2);            // missing required --Z
    CHECK(run("frobnicate").code == 2);              // unknown subcommand
    CHECK(run("minchi " + a2 + " --box a1=0,a2=0").code == 1);  // empty region
    Run msg = run("validate " + write_file("empty.graph", ""));
    CHECK(msg.err.find("no vertices") != std::string::npos);
}

TEST_CASE("transform writes blow-up files with pullbacks") {
    std::string one = write_file("one.graph", "graph one\nv a euler=-2\ncycle unit a=1\n");
    std::string out = (kTmp / "one_b.graph").string();
    Run r = run("transform " + one + " --blowup-vertex a --times 2 -o " + out + " --json --stable");
    REQUIRE(r.code == 0);
    json p = json::parse(r.out)["payload"];
    CHECK(p["mode"] == "blowup_vertex");
    CHECK(p["moves"].size() == 2);
    CHECK(p["pullbacks"]["unit"]["_b2"] == 1);
    CHECK(run("validate " + out).code == 0);
    json round = payload("chi " + out + " unit");
    CHECK(round["chi"] == payload("chi " + one + " unit")["chi"]);

    std::string a2 = fixture("a2.graph", "a2");
    std::string eout = (kTmp / "a2_edge.graph").string();
    Run e = run("transform " + a2 + " --blowup-edge a1,a2 -o " + eout);
    CHECK(e.code == 0);
    CHECK(run("validate " + eout).out.find("3 vertices") != std::string::npos);

    CHECK(run("transform " + a2 + " -o " + eout).code == 1);  // no mode picked
    CHECK(run("transform " + a2 + " --blowup-vertex a1 --blowup-edge a1,a2 -o " + eout).code == 1);
}

TEST_CASE("transform splits subgraphs into component files") {
    std::string dpp = fixture("dpp.graph", "dpp");
    std::string base = (kTmp / "dppsub").string();
    Run r = run("transform " + dpp + " --subgraph c0,c2,c3,c4,c5,c7,d1,d6 -o " + base +
                " --json --stable");
    REQUIRE(r.code == 0);
    json comps = json::parse(r.out)["payload"]["components"];
    REQUIRE(comps.size() == 5);
    for (int k = 0; k < 5; ++k) {
        std::string f = base + ".c" + std::to_string(k);
        CHECK(comps[k]["file"] == f);
        CHECK(run("validate " + f).code == 0);
    }
    CHECK(comps[1]["vertices"].size() == 4);
}

TEST_CASE("bounds reports generic-structure values") {
    std::string dpp = fixture("dpp.graph", "dpp");
    json p = payload("bounds " + dpp + " --Z 3*z_min");
    CHECK(p["label"] == "generic-structure/topological bound");
    CHECK(p["stability_bound"] == 2);
    CHECK(p["generic_h1"] == 2);
    json q = payload("bounds " + dpp + " --Z z_min --I c0,c1,c2,c3,c4,c5,c6,c7,d1,d6");
    CHECK(q["generic_e_z"] == q["generic_h1"]);
    std::string a2 = fixture("a2.graph", "a2");
    json rational = payload("bounds " + a2 + " --Z z_min");
    CHECK(rational["stability_bound"] == 0);
    CHECK(rational["generic_h1"] == 0);
}

TEST_CASE("spectrum and realize modes") {
    std::string dpp = fixture("dpp.graph", "dpp");
    json sp = payload("spectrum " + dpp);
    CHECK(sp["values"] == json::array({0, 1, 2}));
    json re = payload("spectrum " + dpp + " --realize 2");
    CHECK(re["found"] == true);
    CHECK(re["moves"].empty());  // q = p_a needs no moves
    json r1 = payload("spectrum " + dpp + " --realize 1");
    CHECK(r1["found"] == true);
    CHECK(r1["stages"].back()["p_a"] == 1);
    CHECK(run("spectrum " + dpp + " --realize 9").code == 1);
}

TEST_CASE("dot export and stdin input") {
    std::string a2 = fixture("a2.graph", "a2");
    std::string dot = (kTmp / "a2.dot").string();
    REQUIRE(run("validate " + a2 + " --dot " + dot).code == 0);
    std::ifstream in(dot);
    std::string t((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(t.find("label=\"a1\\ne=-2,g=0\"") != std::string::npos);
    Run piped = run("validate - < " + a2);
    CHECK(piped.code == 0);
    CHECK(piped.out.find("2 vertices") != std::string::npos);
}

TEST_CASE("gen emits deterministic valid graphs") {
    Run a = run("gen --seed 7 --vertices 5");
    Run b = run("gen --seed 7 --vertices 5");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    std::string f = write_file("gen.graph", a.out);
    CHECK(run("validate " + f).code == 0);
    CHECK(run("gen --seed 8 --vertices 5").out != a.out);
}

TEST_CASE("support payload") {
    std::string a2 = fixture("a2.graph", "a2");
    json p = payload("support " + a2 + " dual:a1");
    CHECK(p["support"] == json::array({"a1"}));
    CHECK(p["in_dual_lattice"] == true);
    CHECK(p["dual_coefficients"]["a1"] == 1);
    CHECK(p["dual_coefficients"]["a2"] == 0);
}

TEST_CASE("threads flag is accepted and changes nothing") {
    std::string dpp = fixture("dpp.graph", "dpp");
    Run one = run("minchi " + dpp + " --json --stable");
    Run four = run("minchi " + dpp + " --threads 4 --json --stable");
    CHECK(one.code == 0);
    CHECK(one.out == four.out);
}
