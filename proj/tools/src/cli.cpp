#include "gramconv_cli/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <random>
#include <sstream>

#include "gramconv/balanced_slp.hpp"
#include "gramconv/errors.hpp"
#include "gramconv/lcg.hpp"
#include "gramconv/lcg_access.hpp"
#include "gramconv/lcg_build.hpp"
#include "gramconv/lz_fcpm.hpp"
#include "gramconv/lz_from_lcg.hpp"
#include "gramconv/lz_parse.hpp"
#include "gramconv/lz_stream.hpp"
#include "gramconv/oracles.hpp"
#include "gramconv/slp.hpp"

namespace gramconv::cli {

namespace {

constexpr std::uint64_t kVerifyNaiveLimit = 20000;

struct RunConfig {
    std::string input;
    std::string output;
    std::string against;
    std::string algo = "stream";
    std::string engine = "scan";
    std::optional<std::uint64_t> seed;
    std::optional<double> delta;
    double budget_c = kDefaultBudgetConstant;
    bool quick = false;
    bool verbose = false;
};

// Exceptions carrying an exit code through the command bodies.
struct Failure {
    int code;
    std::string message;
};

enum class FileKind { kSlp, kLcg, kLz };

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Failure{kFormatError, "cannot open '" + path + "'"};
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Failure{kFormatError, "cannot open '" + path + "'"};
    return in;
}

FileKind detect(const std::string& path) {
    std::ifstream in = open_input(path);
    std::string header;
    std::getline(in, header);
    if (!header.empty() && header.back() == '\r') header.pop_back();
    if (header == "SLP v1") return FileKind::kSlp;
    if (header == "LCG v1") return FileKind::kLcg;
    if (header == "LZ v1") return FileKind::kLz;
    throw Failure{kFormatError, path + ":1: unrecognized header '" + header + "'"};
}

Slp load_slp(const std::string& path) {
    std::ifstream in = open_input(path);
    return read_slp(in, path);
}

Rlcfg load_lcg(const std::string& path) {
    std::ifstream in = open_input(path);
    return read_lcg(in, path);
}

LzParse load_lz(const std::string& path) {
    std::ifstream in = open_input(path);
    return read_lz(in, path);
}

template <typename Write>
void save(const std::string& path, Write&& write) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Failure{kFormatError, "cannot write '" + path + "'"};
    write(out);
    out.flush();
    if (!out) throw Failure{kFormatError, "write to '" + path + "' failed"};
}

std::uint64_t resolve_seed(const RunConfig& cfg, std::ostream& err) {
    std::uint64_t seed;
    if (cfg.seed) {
        seed = *cfg.seed;
    } else {
        std::random_device rd;
        seed = (std::uint64_t{rd()} << 32) ^ rd();
    }
    err << "seed=" << seed << '\n';
    return seed;
}

std::string decode_any(const std::string& path) {
    switch (detect(path)) {
        case FileKind::kSlp:
            return expand(load_slp(path));
        case FileKind::kLcg:
            return expand(load_lcg(path));
        case FileKind::kLz:
            return decode(load_lz(path));
    }
    return {};
}

int cmd_build_slp(const RunConfig& cfg, std::ostream& err) {
    const std::string text = read_file(cfg.input);
    if (text.empty()) throw Failure{kFormatError, cfg.input + ": text is empty"};
    const std::uint64_t seed = resolve_seed(cfg, err);
    const Slp slp = build_slp_from_text(text, seed);
    save(cfg.output, [&](std::ostream& out) { write_slp(out, slp); });
    return kOk;
}

int cmd_slp2lz(const RunConfig& cfg, std::ostream& err) {
    const Slp slp = load_slp(cfg.input);
    const std::uint64_t seed = resolve_seed(cfg, err);
    LzParse parse;
    if (cfg.algo == "stream") {
        parse = slp_to_lz_stream(slp, seed);
    } else {
        parse = slp_to_lz_fcpm(slp, seed, cfg.engine == "index" ? EngineKind::kIndex : EngineKind::kScan);
    }
    save(cfg.output, [&](std::ostream& out) { write_lz(out, parse); });
    if (cfg.verbose) err << "z=" << parse.size() << '\n';
    return kOk;
}

int cmd_slp2lcg(const RunConfig& cfg, std::ostream& err) {
    const Slp slp = load_slp(cfg.input);
    const std::uint64_t seed = resolve_seed(cfg, err);
    LcgBuildStats stats;
    Rlcfg lcg;
    if (cfg.delta) {
        try {
            lcg = build_lcg_with_budget(slp, seed, *cfg.delta, cfg.budget_c, &stats);
        } catch (const std::runtime_error& e) {
            if (dynamic_cast<const std::invalid_argument*>(&e)) throw;
            throw Failure{kInvariantViolation, e.what()};
        }
    } else {
        lcg = build_lcg(slp, seed, &stats);
    }
    save(cfg.output, [&](std::ostream& out) { write_lcg(out, lcg); });
    if (cfg.verbose) err << "g_lc=" << stats.rules << " levels=" << stats.levels << " restarts=" << stats.restarts << '\n';
    return kOk;
}

int cmd_lcg2lz(const RunConfig& cfg, std::ostream& err) {
    const Rlcfg lcg = load_lcg(cfg.input);
    const std::uint64_t seed = resolve_seed(cfg, err);
    const LzParse parse = lcg_to_lz(lcg, seed);
    save(cfg.output, [&](std::ostream& out) { write_lz(out, parse); });
    return kOk;
}

int cmd_decode(const RunConfig& cfg, std::ostream& out) {
    const std::string text = decode_any(cfg.input);
    if (cfg.output.empty()) {
        out << text;
    } else {
        save(cfg.output, [&](std::ostream& o) { o << text; });
    }
    return kOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const std::string expected = read_file(cfg.against);
    const FileKind kind = detect(cfg.input);
    std::string problem;
    if (kind == FileKind::kLz) {
        const LzParse parse = load_lz(cfg.input);
        problem = check_lz_invariants(parse, expected);
        if (problem.empty() && expected.size() <= kVerifyNaiveLimit && parse.starts() != naive_lz(expected).starts()) {
            problem = "phrase boundaries differ from the greedy parse";
        }
    } else {
        const std::string got = kind == FileKind::kSlp ? expand(load_slp(cfg.input)) : expand(load_lcg(cfg.input));
        if (got != expected) problem = "expansion differs from the reference text";
    }
    if (!problem.empty()) {
        err << cfg.input << ": " << problem << '\n';
        return kMismatch;
    }
    out << "ok\n";
    return kOk;
}

void print_delta(std::ostream& out, const std::string& text, std::uint64_t g_lc) {
    if (text.size() > kDeltaMaxLength) return;
    const Delta d = naive_delta(text);
    const double n = static_cast<double>(text.size());
    out << "delta=" << d.num << '/' << d.den << '\n';
    const double denom = d.value() * std::log2(std::max(n / d.value(), 2.0));
    out << "ratio=" << static_cast<double>(g_lc) / denom << '\n';
}

int cmd_stats(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    switch (detect(cfg.input)) {
        case FileKind::kSlp: {
            const Slp slp = load_slp(cfg.input);
            const SymbolMeta meta = compute_meta(slp);
            out << "format=slp\nn=" << meta.exp_len[slp.root] << "\ng=" << slp.num_rules()
                << "\nheight=" << meta.height[slp.root] << '\n';
            if (cfg.quick) return kOk;
            const std::uint64_t seed = resolve_seed(cfg, err);
            out << "z=" << slp_to_lz_stream(slp, seed).size() << '\n';
            LcgBuildStats stats;
            build_lcg(slp, seed, &stats);
            out << "g_lc=" << stats.rules << "\nlevels=" << stats.levels << '\n';
            if (meta.exp_len[slp.root] <= kDeltaMaxLength) print_delta(out, expand(slp), stats.rules);
            return kOk;
        }
        case FileKind::kLcg: {
            const Rlcfg lcg = load_lcg(cfg.input);
            const LcgMeta meta = compute_meta(lcg);
            std::uint32_t levels = 0;
            for (const LcgRule& r : lcg.rules) levels = std::max(levels, r.level);
            out << "format=lcg\nn=" << meta.exp_len[lcg.root] << "\ng_lc=" << lcg.num_rules() << "\nlevels=" << levels
                << "\ndepth=" << meta.depth[lcg.root] << '\n';
            if (cfg.quick) return kOk;
            const std::uint64_t seed = resolve_seed(cfg, err);
            out << "z=" << lcg_to_lz(lcg, seed).size() << '\n';
            if (meta.exp_len[lcg.root] <= kDeltaMaxLength) print_delta(out, expand(lcg), lcg.num_rules());
            return kOk;
        }
        case FileKind::kLz: {
            const LzParse parse = load_lz(cfg.input);
            out << "format=lz\nn=" << parse.text_length << "\nz=" << parse.size() << '\n';
            return kOk;
        }
    }
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Grammar and LZ conversions", "gramconv"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_seed = [&](CLI::App* sub) { sub->add_option("--seed", cfg.seed, "Seed for all randomized choices"); };
    auto add_verbose = [&](CLI::App* sub) { sub->add_flag("-v,--verbose", cfg.verbose, "Print sizes"); };

    auto* build_slp = app.add_subcommand("build-slp", "Build an SLP from a raw text file");
    build_slp->add_option("text", cfg.input)->required();
    build_slp->add_option("-o,--output", cfg.output)->required();
    add_seed(build_slp);

    auto* slp2lz = app.add_subcommand("slp2lz", "LZ parse of an SLP");
    slp2lz->add_option("input", cfg.input)->required();
    slp2lz->add_option("-o,--output", cfg.output)->required();
    slp2lz->add_option("--algo", cfg.algo)->check(CLI::IsMember({"stream", "fcpm"}));
    slp2lz->add_option("--engine", cfg.engine)->check(CLI::IsMember({"scan", "index"}));
    add_seed(slp2lz);
    add_verbose(slp2lz);

    auto* slp2lcg = app.add_subcommand("slp2lcg", "Locally consistent grammar of an SLP");
    slp2lcg->add_option("input", cfg.input)->required();
    slp2lcg->add_option("-o,--output", cfg.output)->required();
    slp2lcg->add_option("--delta", cfg.delta, "Substring complexity; enables the size budget")
        ->check(CLI::PositiveNumber);
    slp2lcg->add_option("--budget-c", cfg.budget_c, "Budget constant c")->check(CLI::PositiveNumber);
    add_seed(slp2lcg);
    add_verbose(slp2lcg);

    auto* lcg2lz = app.add_subcommand("lcg2lz", "LZ parse of an LCG");
    lcg2lz->add_option("input", cfg.input)->required();
    lcg2lz->add_option("-o,--output", cfg.output)->required();
    add_seed(lcg2lz);

    auto* decode_cmd = app.add_subcommand("decode", "Print the text of an SLP, LCG or LZ file");
    decode_cmd->add_option("input", cfg.input)->required();
    decode_cmd->add_option("-o,--output", cfg.output);

    auto* verify = app.add_subcommand("verify", "Check a file against the text it should represent");
    verify->add_option("input", cfg.input)->required();
    verify->add_option("--against", cfg.against)->required();

    auto* stats = app.add_subcommand("stats", "Sizes and measures of a file");
    stats->add_option("input", cfg.input)->required();
    stats->add_flag("--quick", cfg.quick, "File metadata only");
    add_seed(stats);

    std::vector<std::string> reversed_args(args.rbegin(), args.rend());
    try {
        app.parse(reversed_args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kFormatError;
    }

    try {
        if (*build_slp) return cmd_build_slp(cfg, err);
        if (*slp2lz) return cmd_slp2lz(cfg, err);
        if (*slp2lcg) return cmd_slp2lcg(cfg, err);
        if (*lcg2lz) return cmd_lcg2lz(cfg, err);
        if (*decode_cmd) return cmd_decode(cfg, out);
        if (*verify) return cmd_verify(cfg, out, err);
        if (*stats) return cmd_stats(cfg, out, err);
    } catch (const Failure& f) {
        err << "error: " << f.message << '\n';
        return f.code;
    } catch (const FormatError& e) {
        err << "error: " << e.what() << '\n';
        return kFormatError;
    } catch (const InvariantViolation& e) {
        err << "error: " << e.what() << '\n';
        return kInvariantViolation;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kFormatError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kInvariantViolation;
    }
    return kOk;
}

}  // namespace gramconv::cli
