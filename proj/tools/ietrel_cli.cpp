// ietrel command-line tool. Every operation goes through the C interface in
// ietrel.h; exit codes are the ietrel_status values (0 ok, 1 verification
// failed, 2 parse error, 3 context mismatch, 4 precondition, 5 search cap,
// 6 internal), plus 64 for usage errors and 66 for unreadable files.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "ietrel/ietrel.h"

namespace {

constexpr int kUsageError = 64;
constexpr int kNoInput = 66;

struct CliFailure {
    int code;
};

struct MapDeleter {
    void operator()(ietrel_map* p) const { ietrel_map_free(p); }
};
struct RotationDeleter {
    void operator()(ietrel_rotation* p) const { ietrel_rotation_free(p); }
};
struct WordDeleter {
    void operator()(ietrel_word* p) const { ietrel_word_free(p); }
};
struct CertificateDeleter {
    void operator()(ietrel_certificate* p) const { ietrel_certificate_free(p); }
};
struct StringDeleter {
    void operator()(char* p) const { ietrel_string_free(p); }
};

using MapPtr = std::unique_ptr<ietrel_map, MapDeleter>;
using RotationPtr = std::unique_ptr<ietrel_rotation, RotationDeleter>;
using WordPtr = std::unique_ptr<ietrel_word, WordDeleter>;
using CertificatePtr = std::unique_ptr<ietrel_certificate, CertificateDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

void check(ietrel_status status, const std::string& what)
{
    if (status == IETREL_OK)
        return;
    std::cerr << "ietrel: " << what << ": " << ietrel_status_name(status) << ": "
              << ietrel_last_error() << '\n';
    throw CliFailure{static_cast<int>(status)};
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "ietrel: cannot read " << path << '\n';
        throw CliFailure{kNoInput};
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string& path, const std::string& text)
{
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "ietrel: cannot write " << path << '\n';
        throw CliFailure{kNoInput};
    }
    out << text;
}

MapPtr load_map(const std::string& path)
{
    ietrel_map* raw = nullptr;
    check(ietrel_map_parse(read_file(path).c_str(), &raw), path);
    return MapPtr(raw);
}

RotationPtr load_rotation(const std::string& path)
{
    ietrel_rotation* raw = nullptr;
    check(ietrel_rotation_parse(read_file(path).c_str(), &raw), path);
    return RotationPtr(raw);
}

// A word given literally on the command line or as a word/certificate file.
WordPtr load_word(const std::string& arg)
{
    const std::string text = std::filesystem::is_regular_file(arg) ? read_file(arg) : arg;
    ietrel_word* raw = nullptr;
    check(ietrel_word_parse(text.c_str(), &raw), "word");
    return WordPtr(raw);
}

std::string take(char* s)
{
    StringPtr owned(s);
    return owned ? std::string(owned.get()) : std::string();
}

std::string emit(const ietrel_map* map)
{
    char* out = nullptr;
    check(ietrel_map_emit(map, &out), "emit");
    return take(out);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact interval exchange maps and relation certificates"};
    app.require_subcommand(1);

    std::string f_path, g_path, map_path, r_path, conj_path, word_arg, out_path, point;
    std::int64_t exponent = 0;
    std::int64_t steps = 0;
    std::int64_t max_n = 0;
    std::int64_t m_cap = 0;
    std::size_t size = 0;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    bool exhaustive = false;

    auto* compose_cmd = app.add_subcommand("compose", "Write the composition f o g");
    compose_cmd->add_option("--f", f_path, "Outer map")->required();
    compose_cmd->add_option("--g", g_path, "Inner map (applied first)")->required();
    compose_cmd->add_option("-o,--out", out_path, "Output file (default stdout)");

    auto* pow_cmd = app.add_subcommand("pow", "Write the power f^n");
    pow_cmd->add_option("--map", map_path, "Map document")->required();
    pow_cmd->add_option("--n", exponent, "Exponent (may be negative)")->required();
    pow_cmd->add_option("-o,--out", out_path, "Output file (default stdout)");

    auto* eval_cmd = app.add_subcommand("eval", "Evaluate a map at a point, or a word at (r, g)");
    eval_cmd->add_option("--map", map_path, "Map document");
    eval_cmd->add_option("--x", point, "Point in [0, 1), scalar grammar");
    eval_cmd->add_option("--word", word_arg, "Word literal or word/certificate file");
    eval_cmd->add_option("--r", r_path, "Rotation spec document");
    eval_cmd->add_option("--g", g_path, "Map document for g");
    eval_cmd->add_option("--conjugator", conj_path, "Conjugator c; r acts as c r c^-1");
    eval_cmd->add_option("-o,--out", out_path, "Output file (default stdout)");

    auto* orbit_cmd = app.add_subcommand("orbit", "Print x, f(x), ..., f^(m-1)(x)");
    orbit_cmd->add_option("--map", map_path, "Map document")->required();
    orbit_cmd->add_option("--x", point, "Starting point")->required();
    orbit_cmd->add_option("--steps", steps, "Number of points")->required();

    auto* l1_cmd = app.add_subcommand("l1", "Print the L1 distance to the identity");
    l1_cmd->add_option("--map", map_path, "Map document")->required();

    auto* growth_cmd = app.add_subcommand("disc-growth", "CSV of discontinuities and L1 of f^n");
    growth_cmd->add_option("--map", map_path, "Map document")->required();
    growth_cmd->add_option("--max-n", max_n, "Largest power")->required();
    growth_cmd->add_option("-o,--out", out_path, "Output file (default stdout)");

    auto* synth_cmd = app.add_subcommand("synthesize", "Build a relation certificate for (r, g)");
    synth_cmd->add_option("--r", r_path, "Rotation spec document")->required();
    synth_cmd->add_option("--g", g_path, "Map document for g")->required();
    synth_cmd->add_option("--conjugator", conj_path, "Conjugator c; r acts as c r c^-1");
    synth_cmd->add_option("--m-cap", m_cap, "Cap on the rotation power search");
    synth_cmd->add_option("-o,--out", out_path, "Output file (default stdout)");

    auto* verify_cmd = app.add_subcommand("verify", "Check that a word is a relation of (r, g)");
    verify_cmd->add_option("--word", word_arg, "Word literal or word/certificate file")->required();
    verify_cmd->add_option("--r", r_path, "Rotation spec document")->required();
    verify_cmd->add_option("--g", g_path, "Map document for g")->required();
    verify_cmd->add_option("--conjugator", conj_path, "Conjugator c; r acts as c r c^-1");

    auto* prop_cmd = app.add_subcommand("prop-check", "Finite-permutation commutator checks");
    prop_cmd->add_option("--size", size, "Set size (largest size for random trials)")->required();
    auto* exhaustive_flag = prop_cmd->add_flag("--exhaustive", exhaustive, "All instances of this size");
    auto* trials_opt = prop_cmd->add_option("--trials", trials, "Number of random instances");
    prop_cmd->add_option("--seed", seed, "Random seed");
    exhaustive_flag->excludes(trials_opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsageError;
    }

    try {
        if (*compose_cmd) {
            const MapPtr f = load_map(f_path);
            const MapPtr g = load_map(g_path);
            ietrel_map* raw = nullptr;
            check(ietrel_map_compose(f.get(), g.get(), &raw), "compose");
            write_output(out_path, emit(MapPtr(raw).get()));
        } else if (*pow_cmd) {
            const MapPtr f = load_map(map_path);
            ietrel_map* raw = nullptr;
            check(ietrel_map_power(f.get(), exponent, &raw), "pow");
            write_output(out_path, emit(MapPtr(raw).get()));
        } else if (*eval_cmd) {
            if (!word_arg.empty()) {
                if (r_path.empty() || g_path.empty()) {
                    std::cerr << "ietrel: eval --word needs --r and --g\n";
                    return kUsageError;
                }
                const WordPtr w = load_word(word_arg);
                const RotationPtr r = load_rotation(r_path);
                const MapPtr g = load_map(g_path);
                const MapPtr c = conj_path.empty() ? MapPtr() : load_map(conj_path);
                ietrel_map* raw = nullptr;
                check(ietrel_word_eval(w.get(), r.get(), g.get(), c.get(), &raw), "eval");
                write_output(out_path, emit(MapPtr(raw).get()));
            } else {
                if (map_path.empty() || point.empty()) {
                    std::cerr << "ietrel: eval needs --map and --x, or --word, --r and --g\n";
                    return kUsageError;
                }
                const MapPtr f = load_map(map_path);
                char* out = nullptr;
                check(ietrel_map_apply(f.get(), point.c_str(), &out), "eval");
                write_output(out_path, take(out) + "\n");
            }
        } else if (*orbit_cmd) {
            const MapPtr f = load_map(map_path);
            char* out = nullptr;
            check(ietrel_map_orbit(f.get(), point.c_str(), steps, &out), "orbit");
            std::cout << take(out);
        } else if (*l1_cmd) {
            const MapPtr f = load_map(map_path);
            char* exact = nullptr;
            double approx = 0.0;
            check(ietrel_map_l1(f.get(), &exact, &approx), "l1");
            std::cout << "l1_exact: " << take(exact) << '\n';
            std::printf("l1_float: %.12g\n", approx);
        } else if (*growth_cmd) {
            const MapPtr f = load_map(map_path);
            char* csv = nullptr;
            check(ietrel_map_disc_growth(f.get(), max_n, &csv), "disc-growth");
            write_output(out_path, take(csv));
        } else if (*synth_cmd) {
            const RotationPtr r = load_rotation(r_path);
            const MapPtr g = load_map(g_path);
            const MapPtr c = conj_path.empty() ? MapPtr() : load_map(conj_path);
            ietrel_certificate* raw = nullptr;
            check(ietrel_synthesize(r.get(), g.get(), c.get(), m_cap, &raw), "synthesize");
            const CertificatePtr cert(raw);
            char* out = nullptr;
            check(ietrel_certificate_emit(cert.get(), &out), "emit");
            write_output(out_path, take(out));
        } else if (*verify_cmd) {
            const WordPtr w = load_word(word_arg);
            const RotationPtr r = load_rotation(r_path);
            const MapPtr g = load_map(g_path);
            const MapPtr c = conj_path.empty() ? MapPtr() : load_map(conj_path);
            int trivial = 0;
            check(ietrel_word_is_trivial(w.get(), &trivial), "verify");
            int holds = 0;
            check(ietrel_verify(w.get(), r.get(), g.get(), c.get(), &holds), "verify");
            std::cout << "nontrivial: " << (trivial ? "no" : "yes") << '\n';
            std::cout << "identity: " << (holds ? "yes" : "no") << '\n';
            return holds ? 0 : static_cast<int>(IETREL_VERIFICATION_FAILED);
        } else if (*prop_cmd) {
            int passed = 0;
            char* report = nullptr;
            if (exhaustive)
                check(ietrel_prop_check_exhaustive(size, &passed, &report), "prop-check");
            else
                check(ietrel_prop_check_random(size, trials == 0 ? 1000 : trials, seed, &passed,
                                               &report),
                      "prop-check");
            std::cout << take(report);
            std::cout << (passed ? "PASS" : "FAIL") << '\n';
            return passed ? 0 : static_cast<int>(IETREL_VERIFICATION_FAILED);
        }
    } catch (const CliFailure& failure) {
        return failure.code;
    }
    return 0;
}
