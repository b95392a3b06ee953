#include "gramconv/slp.hpp"

#include <algorithm>
#include <array>
#include <ostream>

#include "gramconv/errors.hpp"
#include "line_reader.hpp"

namespace gramconv {

std::string ValidationReport::summary() const {
    std::string out;
    for (const auto& issue : issues) {
        if (!out.empty()) out += "; ";
        out += issue.message;
    }
    return out;
}

ValidationReport validate(const Slp& slp) {
    ValidationReport report;
    constexpr std::size_t kNoRule = SIZE_MAX;
    const std::size_t sigma = slp.sigma();
    if (sigma == 0) {
        report.issues.push_back({SlpIssue::kEmptyAlphabet, kNoRule, "alphabet is empty"});
        return report;
    }
    std::array<bool, 256> seen{};
    for (std::size_t a = 0; a < sigma; ++a) {
        if (seen[slp.terminal_bytes[a]]) {
            report.issues.push_back({SlpIssue::kDuplicateTerminal, kNoRule,
                                     "terminal byte " + std::to_string(slp.terminal_bytes[a]) + " listed twice"});
        }
        seen[slp.terminal_bytes[a]] = true;
    }
    if (sigma > 256) report.issues.push_back({SlpIssue::kDuplicateTerminal, kNoRule, "alphabet larger than 256"});

    SymbolMeta meta;
    meta.exp_len.assign(slp.num_symbols(), 1);
    meta.height.assign(slp.num_symbols(), 0);
    for (std::size_t r = 0; r < slp.rules.size(); ++r) {
        const SymbolId id = static_cast<SymbolId>(sigma + r);
        const auto [left, right] = slp.rules[r];
        if (left >= id || right >= id) {
            report.issues.push_back({SlpIssue::kForwardReference, r,
                                     "rule " + std::to_string(r) + " (id " + std::to_string(id) + ") references id " +
                                         std::to_string(std::max(left, right)) + " not defined before it"});
            meta.exp_len[id] = 1;
            continue;
        }
        const std::uint64_t a = meta.exp_len[left];
        const std::uint64_t b = meta.exp_len[right];
        if (a > kMaxTextLength || b > kMaxTextLength - a) {
            report.issues.push_back({SlpIssue::kLengthOverflow, r,
                                     "rule " + std::to_string(r) + " expands beyond 2^62 symbols"});
            meta.exp_len[id] = kMaxTextLength + 1;
        } else {
            meta.exp_len[id] = a + b;
        }
        meta.height[id] = 1 + std::max(meta.height[left], meta.height[right]);
    }
    if (slp.root >= slp.num_symbols()) {
        report.issues.push_back({SlpIssue::kRootOutOfRange, kNoRule,
                                 "root id " + std::to_string(slp.root) + " out of range [0, " +
                                     std::to_string(slp.num_symbols()) + ")"});
    } else if (meta.exp_len[slp.root] > kMaxTextLength) {
        report.issues.push_back({SlpIssue::kLengthOverflow, kNoRule, "text length exceeds 2^62"});
    }
    if (report.ok()) report.meta = std::move(meta);
    return report;
}

SymbolMeta compute_meta(const Slp& slp) {
    ValidationReport report = validate(slp);
    if (!report.ok()) throw InvalidArgument("invalid SLP: " + report.summary());
    return std::move(report.meta);
}

std::string expand(const Slp& slp) {
    std::string out;
    const SymbolMeta meta = compute_meta(slp);
    out.reserve(meta.exp_len[slp.root]);
    for_each_terminal(slp, [&](SymbolId a) { out.push_back(static_cast<char>(slp.terminal_bytes[a])); });
    return out;
}

GrammarTree::GrammarTree(const Slp& slp, const SymbolMeta& meta) : internal_start_(slp.num_symbols(), 0) {
    std::vector<bool> expanded(slp.num_symbols(), false);
    nodes_.push_back({slp.root, 1});
    std::vector<std::uint32_t> stack{0};
    while (!stack.empty()) {
        const std::uint32_t v = stack.back();
        stack.pop_back();
        const SymbolId s = nodes_[v].symbol;
        if (slp.is_terminal(s) || expanded[s]) {
            leaves_.push_back(v);
            continue;
        }
        expanded[s] = true;
        const Position start = nodes_[v].start;
        internal_start_[s] = start;
        const auto [left, right] = slp.rule(s);
        const auto l = static_cast<std::uint32_t>(nodes_.size());
        nodes_.push_back({left, start});
        nodes_.push_back({right, start + meta.exp_len[left]});
        nodes_[v].left = l;
        nodes_[v].right = l + 1;
        stack.push_back(l + 1);
        stack.push_back(l);
    }
}

Slp read_slp(std::istream& in, const std::string& source) {
    detail::LineReader reader(in, source);
    std::vector<std::string_view> tok;
    reader.require(tok, "header");
    if (tok.size() != 2 || tok[0] != "SLP" || tok[1] != "v1") reader.fail("expected header 'SLP v1'");

    Slp slp;
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
        slp.terminal_bytes.push_back(byte);
    }

    reader.require(tok, "rules line");
    if (tok.size() != 2 || tok[0] != "rules") reader.fail("expected 'rules <g>'");
    const std::uint64_t g = reader.number(tok[1], UINT32_MAX - 256, "rule count");
    slp.rules.reserve(g);
    for (std::uint64_t r = 0; r < g; ++r) {
        reader.require(tok, "rule line");
        if (tok.size() != 2) reader.fail("expected '<left> <right>' for rule " + std::to_string(r));
        const std::uint64_t id = sigma + r;
        const std::uint64_t left = reader.number(tok[0], id - 1, "left id");
        const std::uint64_t right = reader.number(tok[1], id - 1, "right id");
        slp.rules.emplace_back(static_cast<SymbolId>(left), static_cast<SymbolId>(right));
    }

    reader.require(tok, "root line");
    if (tok.size() != 2 || tok[0] != "root") reader.fail("expected 'root <id>'");
    slp.root = static_cast<SymbolId>(reader.number(tok[1], sigma + g - 1, "root id"));
    reader.expect_end();

    ValidationReport report = validate(slp);
    if (!report.ok()) reader.fail(report.summary());
    return slp;
}

void write_slp(std::ostream& out, const Slp& slp) {
    out << "SLP v1\nalphabet " << slp.sigma();
    for (auto b : slp.terminal_bytes) out << ' ' << static_cast<unsigned>(b);
    out << "\nrules " << slp.rules.size() << '\n';
    for (const auto& [l, r] : slp.rules) out << l << ' ' << r << '\n';
    out << "root " << slp.root << '\n';
}

Slp prune_unreachable(const Slp& slp) {
    const std::size_t sigma = slp.sigma();
    std::vector<bool> reachable(slp.num_symbols(), false);
    reachable[slp.root] = true;
    for (std::size_t id = slp.num_symbols(); id-- > sigma;) {
        if (!reachable[id]) continue;
        const auto [l, r] = slp.rule(static_cast<SymbolId>(id));
        reachable[l] = reachable[r] = true;
    }
    std::vector<SymbolId> remap(slp.num_symbols());
    Slp out;
    out.terminal_bytes = slp.terminal_bytes;
    for (std::size_t a = 0; a < sigma; ++a) remap[a] = static_cast<SymbolId>(a);
    for (std::size_t id = sigma; id < slp.num_symbols(); ++id) {
        if (!reachable[id]) continue;
        const auto [l, r] = slp.rule(static_cast<SymbolId>(id));
        remap[id] = static_cast<SymbolId>(sigma + out.rules.size());
        out.rules.emplace_back(remap[l], remap[r]);
    }
    out.root = remap[slp.root];
    return out;
}

}  // namespace gramconv
