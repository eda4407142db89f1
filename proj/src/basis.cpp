#include "fricke/basis.hpp"

#include "fricke/error.hpp"
#include "fricke/forms.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace fricke::basis {

WeightDecomposition decompose(int k) {
    if (k % 2 != 0) throw std::invalid_argument("weight must be even, got " + std::to_string(k));
    WeightDecomposition d;
    d.k = k;
    d.r = ((k % 12) + 12) % 12;
    if (d.r == 2) d.r = 14;
    d.ell = (k - d.r) / 12;
    d.eps = forms::cusp_dimension(d.r);
    d.s = (((k % 4) + 4) % 4 == 0) ? 0 : 1;
    for (int t = 0; t < 6; ++t) {
        if (((-2 * t - k) % 12 + 12) % 12 == 0) {
            d.t = t;
            break;
        }
    }
    return d;
}

int default_order(int k, int margin) {
    return decompose(k).gap_end() + margin;
}

namespace {

// (Delta_3^+)^ell * Delta_{3,r} through q^N.
LaurentSeries generator_series(const WeightDecomposition& d, int N) {
    if (N < d.gap_end()) throw std::invalid_argument("truncation order below the generator's valuation");
    const int slack = 2 * std::abs(d.ell) + 4;
    const auto delta = forms::form_cache().get({forms::FormKind::Delta3Plus, 0}, N + slack);
    const auto dr = forms::form_cache().get({forms::FormKind::Delta3R, d.r}, N + slack);
    LaurentSeries s = delta->series.pow(d.ell) * dr->series;
    if (s.trunc_order() < N) throw InternalConsistencyError("generator lost truncation order");
    return s.truncated(N);
}

}  // namespace

BasisForm generator(int k, int N) {
    const WeightDecomposition d = decompose(k);
    return {d, d.min_m(), {mpz_class(1)}, generator_series(d, N)};
}

BasisForm build(int k, int m) {
    const WeightDecomposition d = decompose(k);
    return build(k, m, d.gap_end() + std::max(m, 0) + kDefaultMargin);
}

BasisForm build(int k, int m, int N) {
    const WeightDecomposition d = decompose(k);
    if (m < d.min_m()) throw std::invalid_argument("index below basis range");
    const int gap = d.gap_end();
    if (N < gap) throw std::invalid_argument("truncation order must reach the end of the gap window");
    const int deg = gap + m;

    const LaurentSeries base = generator_series(d, N + deg);
    if (base[gap] != 1) throw InternalConsistencyError("generator is not q^{2 ell + eps} + ...");
    const int j_order = std::max(0, N + deg - 1 - gap) + 1;
    const auto j = forms::form_cache().get({forms::FormKind::J3Plus, 0}, j_order);

    // P_p = base * j^p has leading term q^{gap - p} with coefficient 1.
    std::vector<LaurentSeries> powers;
    powers.reserve(static_cast<std::size_t>(deg + 1));
    powers.push_back(base);
    LaurentSeries jp = j->series;
    for (int p = 1; p <= deg; ++p) {
        powers.push_back(base * jp);
        if (p < deg) jp = jp * j->series;
    }
    for (int p = 0; p <= deg; ++p) {
        const auto& P = powers[static_cast<std::size_t>(p)];
        if (P.trunc_order() < N || P[gap - p] != 1) {
            throw InternalConsistencyError("power product P_" + std::to_string(p) + " malformed");
        }
    }

    std::vector<mpz_class> poly(static_cast<std::size_t>(deg + 1));
    poly[static_cast<std::size_t>(deg)] = 1;
    LaurentSeries f = powers[static_cast<std::size_t>(deg)].truncated(N);
    for (int e = -m + 1; e <= gap; ++e) {
        const int p = gap - e;
        const mpq_class c = -f[e];
        if (c.get_den() != 1) {
            throw InternalConsistencyError("non-integral coefficient " + c.get_str() + " at degree " +
                                           std::to_string(p));
        }
        poly[static_cast<std::size_t>(p)] = c.get_num();
        if (c != 0) f += c * powers[static_cast<std::size_t>(p)].truncated(N);
    }

    if (f[-m] != 1) throw InternalConsistencyError("leading coefficient of f_{k,m} is not 1");
    for (int e = -m + 1; e <= gap; ++e) {
        if (f[e] != 0) throw InternalConsistencyError("gap coefficient q^" + std::to_string(e) + " nonzero");
    }
    return {d, m, std::move(poly), f.normalized()};
}

bool uniqueness_check(const BasisForm& b) {
    try {
        const auto& d = b.decomp;
        if (d != decompose(d.k)) return false;
        if (b.poly.empty() || b.poly.back() != 1) return false;
        if (b.degree() != d.gap_end() + b.m) return false;
        if (b.series[-b.m] != 1) return false;
        for (int e = -b.m + 1; e <= d.gap_end(); ++e) {
            if (b.series[e] != 0) return false;
        }
        const int N = b.series.trunc_order();
        const BasisForm again = build(d.k, b.m, N + 20);
        if (again.poly != b.poly) return false;
        return again.series.truncated(N) == b.series;
    } catch (const std::exception&) {
        return false;
    }
}

nlohmann::json to_json(const BasisForm& b) {
    nlohmann::json poly = nlohmann::json::array();
    for (const auto& c : b.poly) poly.push_back(c.get_str());
    return {{"k", b.decomp.k},
            {"m", b.m},
            {"order", b.series.trunc_order()},
            {"poly", std::move(poly)},
            {"series", fricke::to_json(b.series)}};
}

BasisForm basis_from_json(const nlohmann::json& j) {
    BasisForm b;
    b.decomp = decompose(j.at("k").get<int>());
    b.m = j.at("m").get<int>();
    for (const auto& c : j.at("poly")) b.poly.emplace_back(c.get<std::string>(), 10);
    b.series = series_from_json(j.at("series"));
    if (b.series.trunc_order() != j.at("order").get<int>()) {
        throw std::invalid_argument("basis JSON: order does not match series truncation");
    }
    return b;
}

namespace {

// RAII advisory lock on a side file next to the cache entry.
class FileLock {
public:
    FileLock(const std::filesystem::path& p, int op) {
        fd_ = ::open(p.c_str(), O_RDWR | O_CREAT, 0644);
        if (fd_ >= 0) ::flock(fd_, op);
    }
    ~FileLock() {
        if (fd_ >= 0) {
            ::flock(fd_, LOCK_UN);
            ::close(fd_);
        }
    }
    FileLock(const FileLock&) = delete;
    FileLock& operator=(const FileLock&) = delete;

private:
    int fd_ = -1;
};

}  // namespace

BasisCache::BasisCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path BasisCache::path_for(int k, int m, int N) const {
    return dir_ / ("f_k" + std::to_string(k) + "_m" + std::to_string(m) + "_N" + std::to_string(N) + ".json");
}

std::optional<BasisForm> BasisCache::load(int k, int m, int N) const {
    const auto path = path_for(k, m, N);
    if (!std::filesystem::exists(path)) return std::nullopt;
    FileLock lock(path.string() + ".lock", LOCK_SH);
    std::ifstream in(path);
    if (!in) return std::nullopt;
    try {
        const auto j = nlohmann::json::parse(in);
        BasisForm b = basis_from_json(j);
        if (b.decomp.k != k || b.m != m || b.series.trunc_order() != N) return std::nullopt;
        return b;
    } catch (const std::exception&) {
        return std::nullopt;  // corrupt entry: rebuild
    }
}

void BasisCache::store(const BasisForm& b) const {
    std::filesystem::create_directories(dir_);
    const auto path = path_for(b.decomp.k, b.m, b.series.trunc_order());
    std::ostringstream tag;
    tag << ".tmp." << ::getpid() << "." << std::hash<std::thread::id>{}(std::this_thread::get_id());
    const std::filesystem::path tmp = path.string() + tag.str();
    {
        std::ofstream out(tmp);
        out << to_json(b).dump();
        if (!out) throw std::runtime_error("cannot write basis cache entry " + tmp.string());
    }
    FileLock lock(path.string() + ".lock", LOCK_EX);
    std::filesystem::rename(tmp, path);
}

BasisForm BasisCache::get_or_build(int k, int m, int N) const {
    if (auto hit = load(k, m, N)) return *std::move(hit);
    BasisForm b = build(k, m, N);
    store(b);
    return b;
}

}  // namespace fricke::basis
