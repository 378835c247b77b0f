#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

#include "fixtures.hpp"
#include "rgtv/io.hpp"
#include "rgtv/kernel.hpp"

using namespace rgtv;
namespace fs = std::filesystem;

namespace {

const fs::path kDir = fs::temp_directory_path() / "rgtv_test_cli";

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    const std::string cmd = std::string(RGTV_CLI_PATH) + " " + args + " 2>/dev/null";
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[256];
    while (std::fgets(buf, sizeof buf, pipe)) r.out += buf;
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string path(const std::string& name) { return (kDir / name).string(); }

}  // namespace

TEST_CASE("cli: blur, psnr, kernel-estimate, analyze, deblur") {
    fs::create_directories(kDir);
    save_image(path("sharp.png"), testing::pws_scene(48));

    CHECK(run("blur --input " + path("sharp.png") + " --kernel 'builtin:motion-line(5,30)' --noise-sigma 0.01 --seed 7 "
              "--output " + path("blurry.png")).code == 0);
    CHECK(run("blur --input " + path("sharp.png") + " --kernel 'builtin:motion-line(5,30)' --noise-sigma 0.01 --seed 7 "
              "--output " + path("blurry2.png")).code == 0);
    CHECK(read_text_file(path("blurry.png")) == read_text_file(path("blurry2.png")));

    const RunResult same = run("psnr " + path("sharp.png") + " " + path("sharp.png"));
    CHECK(same.code == 0);
    CHECK(same.out == "inf\n");
    const RunResult p = run("psnr " + path("sharp.png") + " " + path("blurry.png"));
    CHECK(p.code == 0);
    CHECK(p.out.find('.') == p.out.size() - 6);

    CHECK(run("kernel-estimate --sharp " + path("sharp.png") + " --blurry " + path("blurry.png") +
              " --kernel-size 5 --mu 0.05 --output " + path("k_est.txt")).code == 0);
    CHECK(load_kernel(path("k_est.txt")).size == 5);

    CHECK(run("analyze --input " + path("blurry.png") + " --region 0,0,24,24 --bins 10 --output " + path("h.csv"))
              .code == 0);
    const std::string csv = read_text_file(path("h.csv"));
    CHECK(csv.rfind("bin_lo,bin_hi,count\n", 0) == 0);
    CHECK(csv.find("\nmid_band_fraction,") != std::string::npos);

    write_text_file(path("cfg.txt"), "max_outer_iters = 3\npd_iters = 40\n");
    CHECK(run("deblur --input " + path("blurry.png") + " --kernel-size 5 --output " + path("restored.png") +
              " --kernel-out " + path("k.txt") + " --config " + path("cfg.txt") + " --trace " + path("trace.csv"))
              .code == 0);
    CHECK(load_kernel(path("k.txt")).is_normalized());
    CHECK(read_text_file(path("trace.csv")).rfind("outer,inner,objective,primal_residual\n", 0) == 0);
    CHECK(load_image(path("restored.png")).gray.width() == 48);
}

TEST_CASE("cli: exit codes") {
    fs::create_directories(kDir);
    save_image(path("small.png"), testing::pws_scene(48));
    CHECK(run("").code == 1);
    CHECK(run("frobnicate").code == 1);
    CHECK(run("blur --input " + path("small.png")).code == 1);
    CHECK(run("psnr /nonexistent/a.png /nonexistent/b.png").code == 2);
    CHECK(run("deblur --input " + path("small.png") + " --kernel-size 4 --output " + path("o.png") +
              " --kernel-out " + path("o.txt")).code == 1);
    write_text_file(path("bad.cfg"), "unknown_key = 1\n");
    CHECK(run("deblur --input " + path("small.png") + " --kernel-size 5 --output " + path("o.png") +
              " --kernel-out " + path("o.txt") + " --config " + path("bad.cfg")).code == 1);
    save_image(path("flat.png"), ImageBuf(32, 32, 0.5));
    CHECK(run("kernel-estimate --sharp " + path("flat.png") + " --blurry " + path("flat.png") +
              " --kernel-size 3 --mu 0.05 --output " + path("o.txt")).code == 3);
}
