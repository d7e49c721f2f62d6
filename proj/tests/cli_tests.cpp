// End-to-end checks of the command-line driver. The binary path arrives as
// argv[1] (wired by CTest).

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

std::string g_binary;
int g_failures = 0;

void expect(bool ok, const std::string& what) {
    std::printf("%s %s\n", ok ? "[ok]  " : "[FAIL]", what.c_str());
    if (!ok) ++g_failures;
}

int run(const std::string& args) {
    std::string cmd = g_binary + " " + args + " >/dev/null 2>&1";
    int st = std::system(cmd.c_str());
    if (st == -1) return -1;
    return WEXITSTATUS(st);
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

fs::path fresh_dir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / ("sva_cli_" + name);
    fs::remove_all(dir);
    return dir;
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: cli_tests <path-to-sva-binary>\n");
        return 2;
    }
    g_binary = argv[1];

    {
        fs::path dir = fresh_dir("loop1");
        int code = run("--minpoly 1,2,-1 --root 2 --triple \"1; r; r^2\" --steps 40 --loop --out " +
                       dir.string());
        expect(code == 0, "cos(pi/7) loop run exits 0");
        expect(fs::exists(dir / "trace.jsonl"), "trace.jsonl written");
        expect(fs::exists(dir / "loop.json"), "loop certificate written");
        std::string loop = slurp(dir / "loop.json");
        expect(loop.find("\"certified\": true") != std::string::npos, "loop is certified");
        std::string summary = slurp(dir / "summary.json");
        expect(summary.find("\"loop_found\": true") != std::string::npos, "summary reports the loop");
    }

    {
        fs::path a = fresh_dir("det_a"), b = fresh_dir("det_b");
        std::string args = "--minpoly 0,0,13 --triple \"1; r; r^2\" --steps 120 --metrics --format csv";
        int ca = run(args + " --out " + a.string());
        int cb = run(args + " --out " + b.string());
        expect(ca == 0 && cb == 0, "deterministic pair of runs exits 0");
        expect(slurp(a / "trace.csv") == slurp(b / "trace.csv"), "identical configs give byte-identical traces");
        expect(slurp(a / "metrics.csv") == slurp(b / "metrics.csv"), "metrics files are byte-identical");
        expect(!slurp(a / "trace.csv").empty(), "csv trace is nonempty");
    }

    {
        fs::path dir = fresh_dir("reducible");
        int code = run("--minpoly 0,0,8 --triple \"1; r; r^2\" --out " + dir.string());
        expect(code == 2, "reducible minimal polynomial exits 2");
        expect(slurp(dir / "summary.json").find("error") != std::string::npos,
               "summary written on validation failure");
    }

    {
        int code = run("--minpoly 0,0,2 --root 1 --triple \"1; r; r^2\" --out " +
                       fresh_dir("badroot").string());
        expect(code == 2, "out-of-range root index exits 2");
        code = run("--rational 2,1,3 --out " + fresh_dir("unordered").string());
        expect(code == 2, "unordered triple exits 2");
        code = run("--rational 1,2,3 --steps 0 --out " + fresh_dir("badsteps").string());
        expect(code == 2, "zero steps exits 2");
        code = run("--rational 1,2,3 --digits 100 --prec 64 --out " + fresh_dir("digits").string());
        expect(code == 2, "digits beyond precision exits 2");
    }

    {
        fs::path dir = fresh_dir("dep");
        int code = run("--rational 1,2,3 --steps 100 --dependence --out " + dir.string());
        expect(code == 0, "expected dependence exits 0");
        std::string summary = slurp(dir / "summary.json");
        expect(summary.find("\"stop_reason\": \"dependence\"") != std::string::npos,
               "summary records dependence");
        expect(summary.find("\"exact\": true") != std::string::npos, "certificate is exact");

        int code2 = run("--rational 1,2,3 --steps 100 --out " + fresh_dir("dep2").string());
        expect(code2 == 4, "unexpected dependence exits 4");
    }

    {
        fs::path dir = fresh_dir("lowprec");
        int code = run("--decimal \"1,2.35133468772075748950001,5.5287748136788721414723\" "
                       "--prec 64 --steps 5000 --digits 19 --out " +
                       dir.string());
        expect(code == 3, "64-bit run over 5000 steps exhausts precision (exit 3)");
        std::string summary = slurp(dir / "summary.json");
        expect(summary.find("precision_exhausted") != std::string::npos,
               "summary reports precision exhaustion");
    }

    {
        fs::path dir = fresh_dir("prism");
        int code = run("--minpoly 0,0,13 --triple \"1; r; r^2\" --steps 40 --prism 6 --out " +
                       dir.string());
        expect(code == 0, "prism run exits 0");
        std::string prism = slurp(dir / "prism.json");
        expect(prism.find("\"pass\": true") != std::string::npos, "prism verdicts pass");
    }

    std::printf("%s\n", g_failures == 0 ? "ALL CLI TESTS PASSED" : "CLI TESTS FAILED");
    return g_failures == 0 ? 0 : 1;
}
