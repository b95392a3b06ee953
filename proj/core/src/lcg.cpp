#include "gramconv/lcg.hpp"

#include <algorithm>
#include <array>
#include <istream>
#include <ostream>

#include "gramconv/errors.hpp"
#include "gramconv/fingerprint.hpp"
#include "line_reader.hpp"

namespace gramconv {

namespace {

// Checks structure and fills meta; problems go to `issues`.
LcgMeta check(const Rlcfg& lcg, std::vector<std::string>& issues) {
    const std::size_t sigma = lcg.sigma();
    LcgMeta meta;
    meta.exp_len.assign(lcg.num_symbols(), 1);
    meta.depth.assign(lcg.num_symbols(), 0);
    if (sigma == 0) issues.emplace_back("alphabet is empty");
    if (sigma > 256) issues.emplace_back("alphabet larger than 256");
    std::array<bool, 256> seen{};
    for (auto b : lcg.terminal_bytes) {
        if (seen[b]) issues.push_back("terminal byte " + std::to_string(b) + " listed twice");
        seen[b] = true;
    }
    for (std::size_t r = 0; r < lcg.rules.size(); ++r) {
        const auto id = static_cast<SymbolId>(sigma + r);
        const LcgRule& rule = lcg.rules[r];
        const std::string where = "rule " + std::to_string(r) + " (id " + std::to_string(id) + ")";
        bool refs_ok = !rule.children.empty();
        for (SymbolId c : rule.children) refs_ok = refs_ok && c < id;
        if (!refs_ok) {
            issues.push_back(where + " references an id not defined before it");
            continue;
        }
        if (rule.is_run()) {
            if (rule.children.size() != 1) issues.push_back(where + " run must have one child");
            if (rule.count < 2) issues.push_back(where + " run count must be at least 2");
            const auto len = static_cast<uint128>(meta.exp_len[rule.children[0]]) * rule.count;
            meta.exp_len[id] = len > kMaxTextLength ? kMaxTextLength + 1 : static_cast<std::uint64_t>(len);
            meta.depth[id] = meta.depth[rule.children[0]] + 1;
            if (rule.level != 0 && rule.level % 2 == 0) issues.push_back(where + " run rule at even level");
        } else {
            if (rule.children.size() < 2) issues.push_back(where + " block must have at least 2 children");
            if (rule.count != rule.children.size()) issues.push_back(where + " block arity mismatch");
            std::uint64_t len = 0;
            std::uint32_t depth = 0;
            for (SymbolId c : rule.children) {
                len = std::min<std::uint64_t>(len + meta.exp_len[c], kMaxTextLength + 1);
                depth = std::max(depth, meta.depth[c]);
            }
            meta.exp_len[id] = len;
            meta.depth[id] = depth + 1;
            if (rule.level % 2 == 1) issues.push_back(where + " block rule at odd level");
        }
        if (meta.exp_len[id] > kMaxTextLength) issues.push_back(where + " expansion too long");
    }
    if (lcg.root >= lcg.num_symbols() && !lcg.terminal_bytes.empty()) issues.emplace_back("root id out of range");
    return meta;
}

}  // namespace

std::vector<std::string> validate(const Rlcfg& lcg) {
    std::vector<std::string> issues;
    check(lcg, issues);
    return issues;
}

LcgMeta compute_meta(const Rlcfg& lcg) {
    std::vector<std::string> issues;
    LcgMeta meta = check(lcg, issues);
    if (!issues.empty()) throw InvalidArgument("invalid LCG: " + issues.front());
    return meta;
}

std::string expand(const Rlcfg& lcg) {
    const LcgMeta meta = compute_meta(lcg);
    std::string out;
    out.reserve(meta.exp_len[lcg.root]);
    for_each_terminal(lcg, [&](SymbolId a) { out.push_back(static_cast<char>(lcg.terminal_bytes[a])); });
    return out;
}

Rlcfg read_lcg(std::istream& in, const std::string& source) {
    detail::LineReader reader(in, source);
    std::vector<std::string_view> tok;
    reader.require(tok, "header");
    if (tok.size() != 2 || tok[0] != "LCG" || tok[1] != "v1") reader.fail("expected header 'LCG v1'");

    Rlcfg lcg;
    reader.require(tok, "alphabet line");
    if (tok[0] != "alphabet" || tok.size() < 2) reader.fail("expected 'alphabet <sigma> <bytes...>'");
    const std::uint64_t sigma = reader.number(tok[1], 256, "alphabet size");
    if (sigma == 0) reader.fail("alphabet size must be positive");
    if (tok.size() != 2 + sigma) {
        reader.fail("alphabet line lists " + std::to_string(tok.size() - 2) + " bytes, expected " + std::to_string(sigma));
    }
    std::array<bool, 256> seen{};
    for (std::size_t a = 0; a < sigma; ++a) {
        const auto byte = static_cast<std::uint8_t>(reader.number(tok[2 + a], 255, "byte value"));
        if (seen[byte]) reader.fail("terminal byte " + std::to_string(byte) + " listed twice");
        seen[byte] = true;
        lcg.terminal_bytes.push_back(byte);
    }

    reader.require(tok, "rules line");
    if (tok.size() != 2 || tok[0] != "rules") reader.fail("expected 'rules <m>'");
    const std::uint64_t m = reader.number(tok[1], UINT32_MAX - 256, "rule count");
    for (std::uint64_t r = 0; r < m; ++r) {
        reader.require(tok, "rule line");
        const std::uint64_t id = sigma + r;
        if (tok[0] == "R") {
            if (tok.size() != 3) reader.fail("expected 'R <sym> <count>'");
            const auto sym = static_cast<SymbolId>(reader.number(tok[1], id - 1, "run symbol"));
            const std::uint64_t count = reader.number(tok[2], kMaxTextLength, "run count");
            if (count < 2) reader.fail("run count must be at least 2");
            lcg.rules.push_back(LcgRule::run(sym, count));
        } else if (tok[0] == "B") {
            if (tok.size() < 2) reader.fail("expected 'B <t> <sym...>'");
            const std::uint64_t t = reader.number(tok[1], UINT32_MAX, "block length");
            if (t < 2) reader.fail("block length must be at least 2");
            if (tok.size() != 2 + t) {
                reader.fail("block lists " + std::to_string(tok.size() - 2) + " symbols, expected " + std::to_string(t));
            }
            std::vector<SymbolId> children;
            children.reserve(t);
            for (std::uint64_t q = 0; q < t; ++q) {
                children.push_back(static_cast<SymbolId>(reader.number(tok[2 + q], id - 1, "block symbol")));
            }
            lcg.rules.push_back(LcgRule::block(std::move(children)));
        } else {
            reader.fail("expected rule line starting with 'R' or 'B'");
        }
    }

    reader.require(tok, "root line");
    if (tok.size() != 2 || tok[0] != "root") reader.fail("expected 'root <id>'");
    lcg.root = static_cast<SymbolId>(reader.number(tok[1], sigma + m - 1, "root id"));

    while (reader.next(tok)) {
        if (tok.size() != 3 || tok[0] != "level") reader.fail("expected 'level <id> <k>'");
        const std::uint64_t id = reader.number(tok[1], sigma + m - 1, "level id");
        if (id < sigma) reader.fail("terminals have no level line");
        lcg.rules[id - sigma].level = static_cast<std::uint32_t>(reader.number(tok[2], UINT32_MAX, "level"));
    }

    const auto issues = validate(lcg);
    if (!issues.empty()) reader.fail(issues.front());
    return lcg;
}

void write_lcg(std::ostream& out, const Rlcfg& lcg) {
    out << "LCG v1\nalphabet " << lcg.sigma();
    for (auto b : lcg.terminal_bytes) out << ' ' << static_cast<unsigned>(b);
    out << "\nrules " << lcg.rules.size() << '\n';
    bool any_level = false;
    for (const LcgRule& r : lcg.rules) {
        any_level = any_level || r.level != 0;
        if (r.is_run()) {
            out << "R " << r.children[0] << ' ' << r.count << '\n';
        } else {
            out << "B " << r.children.size();
            for (SymbolId c : r.children) out << ' ' << c;
            out << '\n';
        }
    }
    out << "root " << lcg.root << '\n';
    if (!any_level) return;
    for (std::size_t r = 0; r < lcg.rules.size(); ++r) {
        if (lcg.rules[r].level != 0) out << "level " << lcg.sigma() + r << ' ' << lcg.rules[r].level << '\n';
    }
}

}  // namespace gramconv
