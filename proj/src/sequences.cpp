#include "halfspace/sequences.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace halfspace {

namespace {

// One memo per triangle family, guarded for concurrent use.
class TriangleMemo {
  public:
    template <typename F>
    Rational get(long n, long k, F&& compute) {
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = memo_.find({n, k});
            if (it != memo_.end()) return it->second;
        }
        Rational v = compute();
        std::lock_guard<std::mutex> lock(mu_);
        return memo_.emplace(std::make_pair(n, k), std::move(v)).first->second;
    }

  private:
    std::mutex mu_;
    std::map<std::pair<long, long>, Rational> memo_;
};

}  // namespace

std::string to_string(SequenceKind k) {
    switch (k) {
        case SequenceKind::MiddleBinomial: return "middle-binomial";
        case SequenceKind::Catalan: return "catalan";
        case SequenceKind::SemiCatalan: return "semi-catalan";
        case SequenceKind::ShiftedSemiCatalan: return "shifted-semi-catalan";
        case SequenceKind::SemiBinomial: return "semi-binomial";
        case SequenceKind::ShiftedSemiBinomial: return "shifted-semi-binomial";
    }
    throw std::logic_error("unknown SequenceKind");
}

Rational middle_binomial(long j) {
    if (j < 0) throw std::domain_error("middle_binomial: negative index");
    return binomial(2 * j, j);
}

Rational catalan(long j) {
    if (j < 0) throw std::domain_error("catalan: negative index");
    return binomial(2 * j, j) - binomial(2 * j, j + 1);
}

Rational semi_catalan(long n, long k) {
    if (n < 0) throw std::domain_error("semi_catalan: negative n");
    if (k < 0 || k > n) return Rational(0);
    static TriangleMemo memo;
    return memo.get(n, k, [&] { return binomial(2 * n, n + k) - binomial(2 * n, n + k + 1); });
}

Rational shifted_semi_catalan(long n, long k) {
    if (n < 0 || k < 0 || k > n)
        throw std::domain_error("shifted_semi_catalan: index out of range");
    static TriangleMemo memo;
    return memo.get(n, k,
                    [&] { return Rational(k + 1, n + 1) * binomial(2 * n + 2, n - k); });
}

Rational semi_binomial(long n, long k) {
    if (n < 0 || k < 0 || k > n)
        throw std::domain_error("semi_binomial: index out of range");
    static TriangleMemo memo;
    return memo.get(n, k, [&] {
        Rational s;
        for (long i = k; i <= n; ++i) s += semi_catalan(n, i);
        return s;
    });
}

Rational shifted_semi_binomial(long j, long k) {
    if (j < 0 || k < 0 || k > j)
        throw std::domain_error("shifted_semi_binomial: index out of range");
    // b'_{j,k} = b_{j,k} + b_{j,k+1} with b_{j,j+1} = 0, uniformly in k; the
    // first column also equals b_{j+1}/2. Forced by B' = R' diag(2,...) R'^T.
    return semi_binomial(j, k) + (k + 1 <= j ? semi_binomial(j, k + 1) : Rational(0));
}

Rational sequence_value(SequenceKind kind, long n, long k) {
    switch (kind) {
        case SequenceKind::MiddleBinomial: return middle_binomial(n);
        case SequenceKind::Catalan: return catalan(n);
        case SequenceKind::SemiCatalan: return semi_catalan(n, k);
        case SequenceKind::ShiftedSemiCatalan: return shifted_semi_catalan(n, k);
        case SequenceKind::SemiBinomial: return semi_binomial(n, k);
        case SequenceKind::ShiftedSemiBinomial: return shifted_semi_binomial(n, k);
    }
    throw std::logic_error("unknown SequenceKind");
}

std::vector<IdentityFailure> check_semicatalan_identities(long n_max) {
    if (n_max < 1) throw std::domain_error("check_semicatalan_identities: n_max < 1");
    std::vector<IdentityFailure> bad;
    for (long n = 1; n <= n_max; ++n) {
        Rational alt, plain;
        for (long k = 0; k <= n; ++k) {
            Rational c = semi_catalan(n, k);
            alt += (k % 2 == 0) ? c : -c;
            plain += c;
        }
        if (!alt.is_zero()) bad.push_back({"alternating semi-Catalan sum", n, -1});
        if (plain != middle_binomial(n)) bad.push_back({"semi-Catalan sum = middle binomial", n, -1});

        Rational u = semi_binomial(n, 0) / Rational(2);
        for (long j = 1; j <= n; ++j) {
            Rational b = semi_binomial(n, j);
            u += (j % 2 == 0) ? b : -b;
        }
        if (!u.is_zero()) bad.push_back({"semi-binomial row relation", n, -1});

        for (long k = 0; k <= n; ++k) {
            Rational next = (k + 1 <= n) ? semi_binomial(n, k + 1) : Rational(0);
            if (semi_binomial(n, k) != semi_catalan(n, k) + next)
                bad.push_back({"b recursion", n, k});
        }
    }
    return bad;
}

}  // namespace halfspace
