#include "toral/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <limits>
#include <thread>

namespace toral {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t mix64(std::uint64_t z)
{
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Output number `i` (0-based) of a SplitMix64 generator started at `seed`.
std::uint64_t splitmix_at(std::uint64_t seed, std::uint64_t i)
{
    return mix64(seed + (i + 1) * kGolden);
}

struct ChunkResult
{
    CampaignTotals totals;
    std::vector<Witness> witnesses;
    std::map<Kind, std::vector<KeptAction>> kept;
};

bool key_less(const KeptAction& x, const KeptAction& y)
{
    return std::tie(x.key, x.index) < std::tie(y.key, y.index);
}

void keep(std::vector<KeptAction>& heap, std::size_t cap, KeptAction item)
{
    if (cap == 0)
        return;
    if (heap.size() < cap) {
        heap.push_back(std::move(item));
        std::push_heap(heap.begin(), heap.end(), key_less);
    } else if (key_less(item, heap.front())) {
        std::pop_heap(heap.begin(), heap.end(), key_less);
        heap.back() = std::move(item);
        std::push_heap(heap.begin(), heap.end(), key_less);
    }
}

void visit(const GridSpec& g, std::uint64_t index, ChunkResult& out)
{
    TorusActionS3 act = grid_action(g, index);
    ++out.totals.tested;
    if (!is_effective(act))
        return;
    ++out.totals.effective;
    if (!is_free(act))
        return;
    ++out.totals.free;

    auto fail = [&](const std::string& msg) {
        ++out.totals.violations;
        out.witnesses.push_back({index, act.to_string(), msg});
    };
    try {
        const ClassificationResult r = classify_t2_quotient(act);
        ++out.totals.per_kind[r.kind];
        if (r.epsilon) {
            ++out.totals.epsilon_checked;
            ++(*r.epsilon == 1 ? out.totals.epsilon_plus : out.totals.epsilon_minus);
            const Kind expected = *r.epsilon == 1 ? Kind::S2xS2_PRODUCT : Kind::CP2_CONNSUM_PRODUCT;
            if (r.kind != expected) {
                ++out.totals.epsilon_failures;
                fail("epsilon " + std::to_string(*r.epsilon) + " disagrees with kind " + to_string(r.kind));
                return;
            }
        }
        keep(out.kept[r.kind], g.keep_per_kind, {mix64(index ^ kGolden), index, std::move(act)});
    } catch (const ClassificationViolation& e) {
        const std::string msg = e.what();
        if (msg.rfind("epsilon_invariant", 0) == 0) {
            ++out.totals.epsilon_checked;
            ++out.totals.epsilon_failures;
        }
        fail(std::string("ClassificationViolation: ") + msg);
    } catch (const std::exception& e) {
        fail(std::string("unexpected error: ") + e.what());
    }
}

} // namespace

CampaignTotals& CampaignTotals::operator+=(const CampaignTotals& o)
{
    tested += o.tested;
    effective += o.effective;
    free += o.free;
    for (const auto& [k, v] : o.per_kind)
        per_kind[k] += v;
    violations += o.violations;
    epsilon_checked += o.epsilon_checked;
    epsilon_failures += o.epsilon_failures;
    epsilon_plus += o.epsilon_plus;
    epsilon_minus += o.epsilon_minus;
    return *this;
}

void GridSpec::validate() const
{
    if (n_factors < 2)
        throw PreconditionError("grid: n_factors must be >= 2");
    if (n_factors > 63)
        throw PreconditionError("grid: n_factors must be <= 63");
    if (bound < 1)
        throw PreconditionError("grid: bound must be >= 1");
    if (jobs < 1)
        throw PreconditionError("grid: jobs must be >= 1");
    if (!random) {
        const std::uint64_t base = 2 * static_cast<std::uint64_t>(bound) + 1;
        std::uint64_t total = 1;
        for (std::size_t i = 0; i < 4 * n_factors; ++i) {
            if (total > std::numeric_limits<std::uint64_t>::max() / base)
                throw PreconditionError("grid: (2B+1)^(4N) does not fit in 64 bits; use --random");
            total *= base;
        }
    }
}

std::uint64_t GridSpec::tuple_count() const
{
    if (random)
        return random->count;
    const std::uint64_t base = 2 * static_cast<std::uint64_t>(bound) + 1;
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < 4 * n_factors; ++i)
        total *= base;
    return total;
}

TorusActionS3 grid_action(const GridSpec& g, std::uint64_t index)
{
    const std::size_t len = 4 * g.n_factors;
    const std::uint64_t base = 2 * static_cast<std::uint64_t>(g.bound) + 1;
    std::vector<long> entries(len);
    if (g.random) {
        for (std::size_t j = 0; j < len; ++j) {
            const std::uint64_t x = splitmix_at(g.random->seed, index * len + j);
            const auto r = static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * base) >> 64);
            entries[j] = static_cast<long>(r) - g.bound;
        }
    } else {
        // first entry is the most significant digit, so index order is lexicographic
        for (std::size_t j = len; j-- > 0;) {
            entries[j] = static_cast<long>(index % base) - g.bound;
            index /= base;
        }
    }
    std::vector<ExponentRow> rows;
    rows.reserve(g.n_factors);
    for (std::size_t i = 0; i < g.n_factors; ++i)
        rows.push_back({entries[4 * i], entries[4 * i + 1], entries[4 * i + 2], entries[4 * i + 3]});
    return TorusActionS3(std::move(rows));
}

CampaignReport run_t2_campaign(const GridSpec& g)
{
    g.validate();
    const auto start = std::chrono::steady_clock::now();
    const std::uint64_t total = g.tuple_count();
    const unsigned jobs = g.jobs;

    std::vector<ChunkResult> chunks(jobs);
    auto work = [&](unsigned c) {
        const std::uint64_t lo = static_cast<std::uint64_t>((static_cast<unsigned __int128>(total) * c) / jobs);
        const std::uint64_t hi = static_cast<std::uint64_t>((static_cast<unsigned __int128>(total) * (c + 1)) / jobs);
        for (std::uint64_t i = lo; i < hi; ++i)
            visit(g, i, chunks[c]);
    };
    if (jobs == 1) {
        work(0);
    } else {
        std::vector<std::thread> threads;
        for (unsigned c = 0; c < jobs; ++c)
            threads.emplace_back(work, c);
        for (auto& t : threads)
            t.join();
    }

    CampaignReport report;
    report.grid = g;
    for (auto& c : chunks) {
        report.totals += c.totals;
        for (auto& w : c.witnesses)
            report.witnesses.push_back(std::move(w));
        for (auto& [k, v] : c.kept)
            for (auto& item : v)
                report.kept[k].push_back(std::move(item));
    }
    std::sort(report.witnesses.begin(), report.witnesses.end(),
              [](const Witness& x, const Witness& y) { return x.index < y.index; });
    for (auto& [k, v] : report.kept) {
        std::sort(v.begin(), v.end(), key_less);
        if (v.size() > g.keep_per_kind)
            v.erase(v.begin() + static_cast<std::ptrdiff_t>(g.keep_per_kind), v.end());
    }
    report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

json to_json(const CampaignReport& r, bool with_timing)
{
    json grid = {{"n_factors", r.grid.n_factors}, {"bound", r.grid.bound}};
    if (r.grid.random) {
        grid["sample"] = "random";
        grid["count"] = r.grid.random->count;
        grid["seed"] = r.grid.random->seed;
        grid["prng"] = kSamplerName;
    } else {
        grid["sample"] = "exhaustive";
    }
    json kinds = json::object();
    for (Kind k : {Kind::S2xS2_PRODUCT, Kind::CP2_CONNSUM_PRODUCT, Kind::T1_S2xS2_PRODUCT}) {
        auto it = r.totals.per_kind.find(k);
        kinds[to_string(k)] = it == r.totals.per_kind.end() ? 0 : it->second;
    }
    json witnesses = json::array();
    for (const auto& w : r.witnesses)
        witnesses.push_back({{"index", w.index}, {"action", w.action}, {"error", w.error}});
    json out = {{"record", "t2_campaign"},
                {"grid", grid},
                {"tested", r.totals.tested},
                {"effective", r.totals.effective},
                {"free", r.totals.free},
                {"per_kind", kinds},
                {"violations", r.totals.violations},
                {"epsilon", {{"checked", r.totals.epsilon_checked},
                             {"failures", r.totals.epsilon_failures},
                             {"plus_one", r.totals.epsilon_plus},
                             {"minus_one", r.totals.epsilon_minus}}},
                {"violation_witnesses", witnesses}};
    if (with_timing) {
        out["jobs"] = r.grid.jobs;
        out["wall_time"] = r.wall_time;
    }
    return out;
}

// -------------------------------------------------------------- profiles

std::vector<HomotopyProfile> expected_max_rank_profiles(int n)
{
    const int k = n / 3;
    switch (n % 3) {
    case 0:
        return {make_profile(n, {{3, k}})};
    case 1:
        return {};
    default: {
        std::vector<HomotopyProfile> out{make_profile(n, {{3, k - 1}, {5, 1}}), make_profile(n, {{2, 1}, {3, k + 1}})};
        std::sort(out.begin(), out.end());
        return out;
    }
    }
}

std::vector<HomotopyProfile> expected_slice_maximal_profiles(int n)
{
    const int s = (n + 2) / 3;
    std::vector<HomotopyProfile> out;
    auto add = [&](int s3, std::initializer_list<std::pair<const int, int>> rest) {
        if (s3 < 0)
            return;
        HomotopyProfile p = make_profile(n, rest);
        p.set(3, p.at(3) + s3);
        out.push_back(p);
    };
    add(s - 2, {{4, 1}, {7, 1}});
    add(s - 3, {{7, 1}});
    add(s - 4, {{5, 2}});
    add(s - 2, {{2, 1}, {5, 1}});
    add(s, {{2, 2}});
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

std::string describe(const std::vector<HomotopyProfile>& ps)
{
    std::string s = "{";
    for (std::size_t i = 0; i < ps.size(); ++i)
        s += (i ? ", " : "") + to_string(ps[i]);
    return s + "}";
}

} // namespace

ProfileCampaignReport run_profile_campaign(int n_max)
{
    if (n_max < 3)
        throw PreconditionError("verify-profiles: n_max must be >= 3");
    const auto start = std::chrono::steady_clock::now();
    ProfileCampaignReport report;
    report.n_max = n_max;
    for (int n = 3; n <= n_max; ++n) {
        const int k = n / 3;
        auto got = enumerate_profiles(n, k, ProfileMode::almost_free);
        auto want = expected_max_rank_profiles(n);
        ++report.cases;
        if (got != want)
            report.mismatches.push_back({n, k, "almost_free", "got " + describe(got) + ", expected " + describe(want)});
        for (const auto& p : got)
            if (!check_elliptic_constraints(p, k).all())
                report.mismatches.push_back({n, k, "almost_free", "fails elliptic constraints: " + to_string(p)});

        if (n % 3 == 1) {
            const int ke = 2 * n / 3;
            auto got_e = enumerate_profiles(n, ke, ProfileMode::effective_max);
            auto want_e = expected_slice_maximal_profiles(n);
            ++report.cases;
            if (got_e != want_e)
                report.mismatches.push_back(
                    {n, ke, "effective_max", "got " + describe(got_e) + ", expected " + describe(want_e)});
        }
    }
    report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

json to_json(const ProfileCampaignReport& r, bool with_timing)
{
    json mism = json::array();
    for (const auto& m : r.mismatches)
        mism.push_back({{"n", m.n}, {"k", m.k}, {"mode", m.mode}, {"detail", m.detail}});
    json out = {{"record", "profile_campaign"},
                {"n_max", r.n_max},
                {"cases", r.cases},
                {"mismatches", r.mismatches.size()},
                {"mismatch_list", mism}};
    if (with_timing)
        out["wall_time"] = r.wall_time;
    return out;
}

unsigned resolve_jobs(unsigned requested)
{
    if (const char* env = std::getenv("RT_JOBS")) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (end == env || *end != '\0' || v == 0 || v > 1024)
            throw PreconditionError(std::string("RT_JOBS: expected a positive integer, got '") + env + "'");
        return static_cast<unsigned>(v);
    }
    return requested == 0 ? 1 : requested;
}

} // namespace toral
