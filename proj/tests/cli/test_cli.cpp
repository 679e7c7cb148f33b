#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const fs::path& scratch() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / ("tsbp_cli_" + std::to_string(::getpid()));
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string read(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result tsbp(const std::string& args) {
    const fs::path out = scratch() / "stdout.txt";
    const fs::path err = scratch() / "stderr.txt";
    const std::string cmd = std::string("\"") + TSBP_BINARY + "\" " + args + " >\"" + out.string() + "\" 2>\"" +
                            err.string() + "\"";
    const int status = std::system(cmd.c_str());
    REQUIRE(WIFEXITED(status));
    return {WEXITSTATUS(status), read(out), read(err)};
}

std::string path(const std::string& name) { return (scratch() / name).string(); }

}  // namespace

TEST_CASE("help and usage errors") {
    const Result help = tsbp("--help");
    CHECK(help.code == 0);
    for (const char* sub : {"run", "sweep", "check", "fixture", "render"}) CHECK(help.out.find(sub) != std::string::npos);

    const Result run_help = tsbp("run --help");
    CHECK(run_help.code == 0);
    for (const char* flag : {"--rule", "--kappa", "--w", "--h", "--p", "--q", "--probs", "--boundary", "--seed", "--trial",
                             "--config", "--snap", "--max-steps", "--square", "--square-state", "--out"}) {
        CHECK(run_help.out.find(flag) != std::string::npos);
    }
    const Result sweep_help = tsbp("sweep --help");
    for (const char* flag : {"--rule", "--p", "--q", "--q-pow", "--q-coef", "--trials", "--seed", "--jobs", "--csv",
                             "--large2-threshold"}) {
        CHECK(sweep_help.out.find(flag) != std::string::npos);
    }

    CHECK(tsbp("").code == 2);
    CHECK(tsbp("frobnicate").code == 2);
    CHECK(tsbp("run --out " + path("x") + " --bogus 1").code == 2);
    CHECK(tsbp("render --config").code == 2);
    CHECK(tsbp("run --rule nope --w 4 --h 4 --seed 1 --out " + path("x")).code == 2);
    CHECK(tsbp("sweep --p 0.1 --q 0.01").code == 2);
    CHECK(tsbp("sweep --p 0.1 --q 0.01 --q-pow 2 --seed 1").code == 2);

    const Result no_seed = tsbp("run --w 8 --h 8 --p 0.2 --q 0.04 --out " + path("noseed"));
    CHECK(no_seed.code == 2);
    CHECK(no_seed.err.find("--seed") != std::string::npos);
    CHECK(tsbp("check al --trials 2").code == 2);
    CHECK(tsbp("fixture blocking").code == 2);
}

TEST_CASE("run writes configs, snapshots and a summary") {
    const std::string dir = path("run1");
    const Result r = tsbp("run --rule standard --w 40 --h 30 --p 0.2 --q 0.04 --seed 1 --snap 0,3 --out " + dir);
    REQUIRE(r.code == 0);
    for (const char* f : {"initial.txt", "initial.ppm", "final.txt", "final.ppm", "snap_0.txt", "snap_0.ppm",
                          "snap_3.txt", "snap_3.ppm", "summary.txt"}) {
        CHECK(fs::exists(fs::path(dir) / f));
    }
    CHECK(read(fs::path(dir) / "snap_0.txt") == read(fs::path(dir) / "initial.txt"));
    CHECK(read(fs::path(dir) / "final.txt").starts_with("40 30 2 torus\n"));
    CHECK(read(fs::path(dir) / "final.ppm").starts_with("P6\n40 30\n255\n"));
    CHECK(read(fs::path(dir) / "final.ppm").size() == std::string("P6\n40 30\n255\n").size() + 40 * 30 * 3);
    CHECK(r.out.find("snapshot t=3") != std::string::npos);
    CHECK(r.out.find("final steps=") != std::string::npos);

    const std::string again = path("run2");
    REQUIRE(tsbp("run --rule standard --w 40 --h 30 --p 0.2 --q 0.04 --seed 1 --snap 0,3 --out " + again).code == 0);
    for (const char* f : {"final.txt", "final.ppm", "snap_3.ppm", "summary.txt"}) {
        CHECK(read(fs::path(dir) / f) == read(fs::path(again) / f));
    }

    SUBCASE("from a config file with an overlaid square") {
        write(path("start.txt"), "4 3 2 frozen:0\n0101\n0202\n0101\n");
        const std::string d = path("run3");
        REQUIRE(tsbp("run --config " + path("start.txt") + " --out " + d).code == 0);
        CHECK(read(fs::path(d) / "final.txt") == "4 3 2 frozen:0\n0111\n0222\n0111\n");
        const std::string d2 = path("run4");
        REQUIRE(tsbp("run --w 10 --h 10 --p 0 --q 0 --seed 2 --square 4 --out " + d2).code == 0);
        CHECK(read(fs::path(d2) / "initial.txt").find("0002222000") != std::string::npos);
    }
    SUBCASE("bad config file") {
        write(path("bad.txt"), "4 3 2 frozen:0\n0101\n");
        const Result bad = tsbp("run --config " + path("bad.txt") + " --out " + path("run5"));
        CHECK(bad.code == 2);
        CHECK(bad.err.find("line") != std::string::npos);
    }
}

TEST_CASE("sweep") {
    const std::string csv = path("sweep.csv");
    const std::string args = "sweep --rule standard --p 0.06:0.22:0.02 --q-pow 2.0 --w 32 --h 32 --trials 3 --seed 3";
    REQUIRE(tsbp(args + " --csv " + csv).code == 0);
    const std::string text = read(csv);
    CHECK(text.starts_with("rule,width,height,p,q,trials,base_seed,freq0"));
    CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 8);
    const Result to_stdout = tsbp(args + " --jobs 3");
    CHECK(to_stdout.code == 0);
    CHECK(to_stdout.out == text);
    const Result grid = tsbp("sweep --rule standard,modified --p 0.1 --q 0.01:0.03:0.01 --w 16 --h 16 --trials 2 --seed 1");
    CHECK(grid.code == 0);
    CHECK(std::count(grid.out.begin(), grid.out.end(), '\n') == 1 + 4);
    CHECK(grid.out.find("\nmodified,16,16,0.1,0.02,2,1,") != std::string::npos);
}

TEST_CASE("check") {
    const Result al = tsbp("check al --trials 20 --size 30 --seed 7");
    CHECK(al.code == 0);
    CHECK(al.out.starts_with("check=al passed=1"));
    CHECK(tsbp("check shell --seed 1").code == 0);
    CHECK(tsbp("check fillable --trials 5 --seed 1").code == 0);

    SUBCASE("on a config") {
        write(path("diag.txt"), "4 4 2 frozen:1\n2111\n1211\n1121\n1112\n");
        const Result w = tsbp("check al --config " + path("diag.txt") + " --j 2");
        CHECK(w.code == 0);
        CHECK(w.out.find("witness=") != std::string::npos);
        write(path("ones.txt"), "3 3 2 frozen:1\n111\n111\n111\n");
        CHECK(tsbp("check al --config " + path("ones.txt") + " --j 2").code == 1);
        write(path("row.txt"), "5 1 2 frozen:0\n20021\n");
        const Result b = tsbp("check blocking --config " + path("row.txt"));
        CHECK(b.code == 0);
        CHECK(b.out.starts_with("blocking_zeros=2\n"));
        CHECK(tsbp("check shell --config " + path("row.txt")).code == 2);
    }
    SUBCASE("shell points") {
        std::string pts;
        for (int x = -8; x <= 8; ++x) {
            const int rest = 8 - std::abs(x);
            pts += std::to_string(x) + " " + std::to_string(rest) + "\n";
            if (rest) pts += std::to_string(x) + " " + std::to_string(-rest) + "\n";
        }
        write(path("circle.txt"), pts);
        CHECK(tsbp("check shell --points " + path("circle.txt") + " --r 8").code == 0);
        write(path("half.txt"), "8 0\n0 8\n");
        CHECK(tsbp("check shell --points " + path("half.txt") + " --r 8").code == 1);
        write(path("junk.txt"), "8 0 1\n");
        CHECK(tsbp("check shell --points " + path("junk.txt") + " --r 8").code == 2);
    }
}

TEST_CASE("fixture and render") {
    const Result ign = tsbp("fixture ignition --L 4 --a 1 --g 2");
    CHECK(ign.code == 0);
    CHECK(ign.out.starts_with("8 8 2 frozen:1\n"));
    CHECK(ign.out.find("22222222\n") != std::string::npos);

    const std::string b1 = path("blk1.txt");
    const std::string b2 = path("blk2.txt");
    REQUIRE(tsbp("fixture blocking --w 20 --h 10 --seed 4 --out " + b1).code == 0);
    REQUIRE(tsbp("fixture blocking --w 20 --h 10 --seed 4 --out " + b2).code == 0);
    CHECK(read(b1) == read(b2));

    const std::string pdir = path("prot");
    REQUIRE(tsbp("fixture protected --size 48 --m 6 --seed 2 --out " + pdir).code == 0);
    const Result pr = tsbp("check restrict --config " + pdir + "/config.txt --region " + pdir + "/region.txt --m 6");
    CHECK(pr.code == 0);
    CHECK(pr.out.starts_with("PR1=1 PR2=1 PR3=1"));

    write(path("one.txt"), "1 1 2 torus\n2\n");
    REQUIRE(tsbp("render --config " + path("one.txt") + " --out " + path("one.ppm")).code == 0);
    CHECK(read(path("one.ppm")) == std::string("P6\n1 1\n255\n") + std::string{'\x1e', '\x3c', '\xdc'});
    CHECK(tsbp("render --config " + path("missing.txt") + " --out " + path("x.ppm")).code == 2);
}
