#include "gramconv/balanced_slp.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "gramconv/errors.hpp"

namespace gramconv {

namespace {

// Persistent AVL ropes over grammar symbols. Every created rule satisfies
// |height(left) - height(right)| <= 1.
class AvlRopeBuilder {
public:
    explicit AvlRopeBuilder(const std::vector<std::uint8_t>& terminals) {
        out_.terminal_bytes = terminals;
        height_.assign(terminals.size(), 0);
    }

    SymbolId join(SymbolId a, SymbolId b) {
        const int ha = static_cast<int>(height_[a]);
        const int hb = static_cast<int>(height_[b]);
        if (std::abs(ha - hb) <= 1) return make(a, b);
        if (ha > hb) {
            const auto [l, r] = children(a);
            const SymbolId c = join(r, b);
            if (height_[c] <= height_[l] + 1) return make(l, c);
            // height(c) == height(l) + 2
            const auto [cl, cr] = children(c);
            if (height_[cr] >= height_[cl]) return make(make(l, cl), cr);
            const auto [cll, clr] = children(cl);
            return make(make(l, cll), make(clr, cr));
        }
        const auto [l, r] = children(b);
        const SymbolId c = join(a, l);
        if (height_[c] <= height_[r] + 1) return make(c, r);
        const auto [cl, cr] = children(c);
        if (height_[cl] >= height_[cr]) return make(cl, make(cr, r));
        const auto [crl, crr] = children(cr);
        return make(make(cl, crl), make(crr, r));
    }

    Slp finish(SymbolId root) {
        out_.root = root;
        return prune_unreachable(out_);
    }

private:
    std::pair<SymbolId, SymbolId> children(SymbolId s) const { return out_.rule(s); }

    SymbolId make(SymbolId l, SymbolId r) {
        const std::uint64_t key = (std::uint64_t{l} << 32) | r;
        auto [it, inserted] = cons_.try_emplace(key, 0);
        if (!inserted) return it->second;
        const auto id = static_cast<SymbolId>(out_.num_symbols());
        out_.rules.emplace_back(l, r);
        height_.push_back(1 + std::max(height_[l], height_[r]));
        it->second = id;
        return id;
    }

    Slp out_;
    std::vector<std::uint32_t> height_;
    std::unordered_map<std::uint64_t, SymbolId> cons_;
};

}  // namespace

Slp AvlBalancer::balance(const Slp& input) const {
    const Slp slp = prune_unreachable(input);
    compute_meta(slp);  // validates
    AvlRopeBuilder builder(slp.terminal_bytes);
    std::vector<SymbolId> image(slp.num_symbols());
    for (std::size_t a = 0; a < slp.sigma(); ++a) image[a] = static_cast<SymbolId>(a);
    for (std::size_t id = slp.sigma(); id < slp.num_symbols(); ++id) {
        const auto [l, r] = slp.rule(static_cast<SymbolId>(id));
        image[id] = builder.join(image[l], image[r]);
    }
    return builder.finish(image[slp.root]);
}

double balanced_height_bound(std::uint64_t n) {
    return AvlBalancer::kAlpha * std::log2(static_cast<double>(std::max<std::uint64_t>(n, 1))) + AvlBalancer::kBeta;
}

BalancedSlp::BalancedSlp(const Slp& input, const FingerprintContext& ctx, const Balancer& balancer)
    : BalancedSlp(balancer.balance(input), ctx, 0) {}

BalancedSlp BalancedSlp::annotate(const Slp& slp, const FingerprintContext& ctx) {
    return BalancedSlp(prune_unreachable(slp), ctx, 0);
}

BalancedSlp::BalancedSlp(Slp slp, const FingerprintContext& ctx, int)
    : slp_(std::move(slp)), meta_(compute_meta(slp_)), ctx_(ctx) {
    const std::size_t total = slp_.num_symbols();
    left_.assign(total, 0);
    right_.assign(total, 0);
    fp_.resize(total);
    pw_.resize(total);
    for (std::size_t a = 0; a < slp_.sigma(); ++a) {
        fp_[a] = ctx_.of_byte(slp_.terminal_bytes[a]);
        pw_[a] = ctx_.base();
    }
    for (std::size_t id = slp_.sigma(); id < total; ++id) {
        const auto [l, r] = slp_.rule(static_cast<SymbolId>(id));
        left_[id] = l;
        right_[id] = r;
        fp_[id] = ctx_.concat(fp_[l], pw_[l], fp_[r]);
        pw_[id] = ctx_.mul(pw_[l], pw_[r]);
    }
}

std::uint8_t BalancedSlp::access(Position i) const {
    if (i == 0 || i > length()) throw InvalidArgument("access position " + std::to_string(i) + " out of range");
    SymbolId s = slp_.root;
    while (!slp_.is_terminal(s)) {
        const SymbolId l = left_[s];
        const std::uint64_t len = meta_.exp_len[l];
        if (i <= len) {
            s = l;
        } else {
            i -= len;
            s = right_[s];
        }
    }
    return slp_.terminal_bytes[s];
}

FingerprintPiece BalancedSlp::prefix_piece(SymbolId s, std::uint64_t m) const {
    FingerprintPiece acc;
    while (m > 0) {
        if (m == meta_.exp_len[s]) return join(acc, whole(s));
        const SymbolId l = left_[s];
        const std::uint64_t len = meta_.exp_len[l];
        if (m <= len) {
            s = l;
        } else {
            acc = join(acc, whole(l));
            m -= len;
            s = right_[s];
        }
    }
    return acc;
}

FingerprintPiece BalancedSlp::suffix_piece(SymbolId s, std::uint64_t lo) const {
    FingerprintPiece acc;
    while (true) {
        if (lo == 1) return join(whole(s), acc);
        const SymbolId l = left_[s];
        const std::uint64_t len = meta_.exp_len[l];
        if (lo > len) {
            lo -= len;
            s = right_[s];
        } else {
            acc = join(whole(right_[s]), acc);
            s = l;
        }
    }
}

FingerprintPiece BalancedSlp::piece(SymbolId s, std::uint64_t lo, std::uint64_t hi) const {
    if (lo > hi) return {};
    while (true) {
        if (lo == 1 && hi == meta_.exp_len[s]) return whole(s);
        const SymbolId l = left_[s];
        const std::uint64_t len = meta_.exp_len[l];
        if (hi <= len) {
            s = l;
        } else if (lo > len) {
            lo -= len;
            hi -= len;
            s = right_[s];
        } else {
            return join(suffix_piece(l, lo), prefix_piece(right_[s], hi - len));
        }
    }
}

Fingerprint BalancedSlp::fingerprint(Position i, Position j) const {
    check_range(*this, i, j);
    return piece(slp_.root, i, j).fp;
}

std::uint64_t BalancedSlp::lce(Position i, Position i2) const {
    if (i == 0 || i2 == 0 || i > length() || i2 > length()) throw InvalidArgument("lce position out of range");
    return gramconv::lce(*this, i, i2, length());
}

}  // namespace gramconv
