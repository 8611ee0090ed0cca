// End-to-end checks of the command-line front end: exit codes, report files,
// determinism, and the configuration surface. Run as: test_cli <binary>.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

int failures = 0;

void check(bool ok, const std::string& what) {
    if (!ok) {
        ++failures;
        std::cerr << "FAILED: " << what << "\n";
    }
}

int run(const std::string& cmd) {
    int rc = std::system(cmd.c_str());
    if (rc == -1) return -1;
    return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: test_cli <eggbergman-binary>\n";
        return 1;
    }
    const std::string bin = argv[1];
    fs::path dir = fs::temp_directory_path() / "eggb_cli_test";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const std::string quiet = " > " + (dir / "stdout.log").string() + " 2>&1";

    // happy path: exact-identity suites at a small budget
    std::string out1 = (dir / "run1").string();
    int rc = run(bin +
                 " verify decomposition multiplier --n 1 --m 1 --a 0.5 --degree 8"
                 " --seed 7 --samples 20000 --out " +
                 out1 + quiet);
    check(rc == 0, "verify exits 0 on passing suites, got " + std::to_string(rc));
    check(fs::exists(out1 + ".jsonl"), "JSON-lines report written");
    check(fs::exists(out1 + ".csv"), "CSV summary written");
    std::string jsonl1 = slurp(out1 + ".jsonl");
    check(jsonl1.find("\"suite\":\"decomposition\"") != std::string::npos,
          "report names the suite");

    // same configuration, new output location: byte-identical report
    std::string out2 = (dir / "run2").string();
    rc = run(bin +
             " verify decomposition multiplier --n 1 --m 1 --a 0.5 --degree 8"
             " --seed 7 --samples 20000 --out " +
             out2 + quiet);
    check(rc == 0, "second verify run exits 0");
    check(slurp(out2 + ".jsonl") == jsonl1, "reports byte-identical across runs");

    // different seed changes at least the parameters block
    std::string out3 = (dir / "run3").string();
    rc = run(bin +
             " verify decomposition --n 1 --m 1 --a 0.5 --seed 8 --samples 20000"
             " --out " +
             out3 + quiet);
    check(rc == 0, "third verify run exits 0");
    check(slurp(out3 + ".jsonl") != jsonl1, "seed is reflected in the report");

    // usage errors exit 2
    rc = run(bin + " verify decomposition --a 2.5 --out " + (dir / "bad").string() +
             quiet);
    check(rc == 2, "out-of-range a exits 2, got " + std::to_string(rc));
    rc = run(bin + " verify nosuchsuite --out " + (dir / "bad2").string() + quiet);
    check(rc == 2, "unknown suite exits 2, got " + std::to_string(rc));
    rc = run(bin + " --definitely-not-a-flag" + quiet);
    check(rc == 2, "unknown flag exits 2, got " + std::to_string(rc));

    // config file with a flag override
    fs::path cfg = dir / "run.cfg";
    {
        std::ofstream o(cfg);
        o << "n 1\nm 1\na 0.5\nsamples 20000\nsuites decomposition\nout "
          << (dir / "fromfile").string() << "\n";
    }
    rc = run(bin + " verify --config " + cfg.string() + " --seed 9" + quiet);
    check(rc == 0, "config-file run exits 0");
    check(fs::exists((dir / "fromfile").string() + ".jsonl"),
          "config-file out path honored");

    // polynomial utility: the literal format round-trips through --op
    fs::path pf = dir / "poly.txt";
    {
        std::ofstream o(pf);
        o << "# f = xi_0 xi_1^2\n1 2 1 0\n";
    }
    fs::path pout = dir / "poly_out.txt";
    rc = run(bin + " poly " + pf.string() + " --nvars 2 --op components --k 0 > " +
             pout.string() + " 2>/dev/null");
    check(rc == 0, "poly subcommand exits 0");
    check(slurp(pout) == "0 2 1/3 0\n",
          "component literal is exact, got '" + slurp(pout) + "'");
    rc = run(bin + " poly " + pf.string() + " --nvars 2 --op decompose --order 3 > " +
             pout.string() + " 2>/dev/null");
    check(rc == 0, "poly decompose exits 0");
    check(slurp(pout).find("#") != std::string::npos, "decompose prints indices");
    rc = run(bin + " poly " + (dir / "missing.txt").string() + quiet);
    check(rc == 2, "missing polynomial file exits 2, got " + std::to_string(rc));

    // solve subcommand caches a kernel record
    std::string sout = (dir / "solved").string();
    rc = run(bin + " solve --n 1 --m 1 --a 0.5 --sigma 1 --out " + sout + quiet);
    check(rc == 0, "solve exits 0");
    bool cache_found = false;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.path().string().find("solved.kernel") != std::string::npos)
            cache_found = true;
    check(cache_found, "solve wrote a kernel cache record");

    fs::remove_all(dir);
    if (failures == 0) {
        std::cout << "test_cli: all checks passed\n";
        return 0;
    }
    std::cerr << "test_cli: " << failures << " check(s) failed\n";
    return 1;
}
