#ifndef TORAL_HARNESS_HPP
#define TORAL_HARNESS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "toral/actions.hpp"
#include "toral/classify.hpp"
#include "toral/io.hpp"

namespace toral {

/// Name of the generator used for random campaigns; echoed in every report.
inline constexpr const char* kSamplerName = "splitmix64-counter";

struct RandomSample
{
    std::uint64_t count = 0;
    std::uint64_t seed = 0;
};

struct GridSpec
{
    std::size_t n_factors = 3;
    int bound = 1; // entries range over [-bound, bound]
    std::optional<RandomSample> random;
    unsigned jobs = 1;
    /// Per-kind number of actions retained for downstream oracle checks.
    std::size_t keep_per_kind = 0;

    /// Number of tuples the campaign visits.
    std::uint64_t tuple_count() const;
    void validate() const;
};

/// The action visited at position `index` of the campaign.
TorusActionS3 grid_action(const GridSpec& g, std::uint64_t index);

struct Witness
{
    std::uint64_t index = 0;
    std::string action; // TorusActionS3::to_string()
    std::string error;

    friend bool operator==(const Witness&, const Witness&) = default;
};

struct CampaignTotals
{
    std::uint64_t tested = 0;
    std::uint64_t effective = 0;
    std::uint64_t free = 0; // effective and free
    std::map<Kind, std::uint64_t> per_kind;
    std::uint64_t violations = 0;
    std::uint64_t epsilon_checked = 0;  // rank 2 instances with l1 != 0
    std::uint64_t epsilon_failures = 0; // of those, identity or sign failures
    std::uint64_t epsilon_plus = 0;
    std::uint64_t epsilon_minus = 0;

    CampaignTotals& operator+=(const CampaignTotals& o);
    friend bool operator==(const CampaignTotals&, const CampaignTotals&) = default;
};

struct KeptAction
{
    std::uint64_t key = 0; // hash of the index; the smallest keys are kept
    std::uint64_t index = 0;
    TorusActionS3 action;
};

struct CampaignReport
{
    GridSpec grid;
    CampaignTotals totals;
    std::vector<Witness> witnesses; // sorted by index
    std::map<Kind, std::vector<KeptAction>> kept;
    double wall_time = 0.0;
};

/*
 * Visits every tuple of the grid (or `count` seeded samples), keeps the
 * effective and free actions, classifies them and tallies the results.
 * The grid is cut into `jobs` contiguous chunks whose tallies are summed,
 * so the report does not depend on the worker count.
 */
CampaignReport run_t2_campaign(const GridSpec& g);

/// Campaign report as a record; timing is left out when `with_timing` is false.
json to_json(const CampaignReport& r, bool with_timing = true);

struct ProfileMismatch
{
    int n = 0;
    int k = 0;
    std::string mode;
    std::string detail;
};

struct ProfileCampaignReport
{
    int n_max = 0;
    std::uint64_t cases = 0;
    std::vector<ProfileMismatch> mismatches;
    double wall_time = 0.0;
};

/// Almost-free profiles at rank floor(n/3) by residue of n mod 3.
std::vector<HomotopyProfile> expected_max_rank_profiles(int n);

/// The five candidate rows at n ≡ 1 (mod 3), k = floor(2n/3); rows needing a
/// negative number of S^3 factors are dropped.
std::vector<HomotopyProfile> expected_slice_maximal_profiles(int n);

/// Compares enumerate_profiles with the closed forms for 3 <= n <= n_max.
ProfileCampaignReport run_profile_campaign(int n_max);

json to_json(const ProfileCampaignReport& r, bool with_timing = true);

/// Worker count after applying the RT_JOBS override.
unsigned resolve_jobs(unsigned requested);

} // namespace toral

#endif
