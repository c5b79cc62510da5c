// End-to-end checks of the command-line tool: reproducible output, JSON
// schema round trip, and the documented exit codes.

#include <array>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <json.hpp>
#include <string>

namespace {

struct RunResult {
    int exit_code;
    std::string output;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(PHE_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return {-1, {}};
    std::string out;
    std::array<char, 4096> buf;
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
    int status = pclose(p);
    return {WEXITSTATUS(status), out};
}

int failures = 0;

void expect(bool ok, const std::string& what) {
    if (!ok) {
        ++failures;
        std::cerr << "FAILED: " << what << "\n";
    } else {
        std::cout << "ok: " << what << "\n";
    }
}

}  // namespace

int main() {
    // identical configuration => byte-identical output
    const std::string cfg = "expand ell --form delta --point i --mmax 8 --format csv";
    RunResult a = run(cfg), b = run(cfg);
    expect(a.exit_code == 0, "expand ell exits 0");
    expect(!a.output.empty() && a.output == b.output, "identical runs are byte-identical");

    RunResult pj1 = run("poincare par --order 1 --m 1 --weight 12 --at i,0.3+1.4i --coset-bound 8 --format json");
    RunResult pj2 = run("poincare par --order 1 --m 1 --weight 12 --at i,0.3+1.4i --coset-bound 8 --format json");
    expect(pj1.exit_code == 0, "poincare exits 0");
    expect(pj1.output == pj2.output, "poincare json runs are byte-identical");

    // json output parses and follows the {meta, rows} schema
    try {
        auto j = nlohmann::ordered_json::parse(pj1.output);
        expect(j.contains("meta") && j.contains("rows"), "json has meta and rows");
        expect(j["rows"].size() == 2, "one row per requested point");
        expect(j["rows"][0].contains("re") && j["rows"][0].contains("last_shell"),
               "rows carry values and the shell diagnostic");
        expect(j["meta"]["command"] == "poincare", "meta records the command");
    } catch (...) {
        expect(false, "json parses");
    }

    // a symmetric window of 2 mwin + 1 rows for the hyperbolic expansion
    RunResult h = run("expand hyp --form delta --disc 5 --mwin 4 --qorder 512");
    expect(h.exit_code == 0, "expand hyp exits 0");
    int data_rows = 0;
    for (size_t pos = 0; (pos = h.output.find("\nhyp,", pos)) != std::string::npos; ++pos)
        ++data_rows;
    expect(data_rows == 9, "hyp window yields 9 rows");

    // printed coefficients of the expansion at i appear in the table
    expect(a.output.find("-0.114263670") != std::string::npos, "leading coefficient printed");
    expect(a.output.find("37.78673") != std::string::npos, "index-8 coefficient printed");

    // exit code 2 on bad input
    expect(run("expand par --form nosuchform").exit_code == 2, "unknown form exits 2");
    expect(run("expand frob --form delta").exit_code == 2, "unknown kind exits 2");
    expect(run("poincare par --order 1 --m 1 --weight 13 --at i").exit_code == 2,
           "odd weight exits 2");
    expect(run("poincare par --order 2 --m 1 --weight 4 --group sl2z --at i").exit_code == 2,
           "order 2 without genus exits 2");
    expect(run("qform --disc 9 --at i").exit_code == 2, "square discriminant exits 2");
    expect(run("nonsense").exit_code == 2, "unknown subcommand exits 2");

    // exit code 3 when a requested tolerance is not reached
    expect(run("inner par --m 1 --weight 12 --coset-bound 2 --quad-order 8 --tol 1e-12")
                   .exit_code == 3,
           "unreachable tolerance exits 3");
    expect(run("inner par --m 1 --weight 12 --coset-bound 12 --quad-order 32 --tol 1e-2")
                   .exit_code == 0,
           "reached tolerance exits 0");

    // verify suite emits a well-formed json document and exits 0
    RunResult v = run("verify inner-products --format json");
    expect(v.exit_code == 0, "verify inner-products passes");
    try {
        auto j = nlohmann::ordered_json::parse(v.output);
        bool all_pass = true;
        for (const auto& row : j["rows"]) all_pass = all_pass && row["status"] == "pass";
        expect(all_pass, "verify rows all pass");
    } catch (...) {
        expect(false, "verify json parses");
    }

    if (failures) {
        std::cerr << failures << " cli check(s) failed\n";
        return 1;
    }
    std::cout << "all cli checks passed\n";
    return 0;
}
