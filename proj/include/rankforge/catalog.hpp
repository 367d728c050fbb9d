#pragma once

#include "rankforge/expr.hpp"
#include "rankforge/oracle.hpp"
#include "rankforge/series.hpp"

#include "json.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace rankforge {

enum class Status { Pass, Fail, AmbiguousResolved };
std::string to_string(Status s);
Status parse_status(const std::string& s);

struct Mismatch {
    long exponent = 0;
    Rational lhs, rhs;
};

struct TailResolution {
    std::string tail;
    int factor = 0;  // the reading that matched the oracle, 0 if none did
    std::vector<Engine::TailTrial> trials;
};

struct Report {
    std::string id;
    Status status = Status::Pass;
    long order = 0;
    std::optional<Mismatch> first_mismatch;
    long millis = 0;
    std::string note;
    std::string error;  // set when evaluation threw
    std::vector<TailResolution> tails;

    bool passed() const { return status != Status::Fail; }
    nlohmann::json to_json() const;
    static Report from_json(const nlohmann::json& j);
    std::string to_text() const;
};

const std::vector<std::string>& suite_names();  // excludes "all"

class Catalog {
public:
    explicit Catalog(Engine& engine);

    Engine& engine() { return eng_; }
    bool has(const std::string& id) const;
    const nlohmann::json& entry(const std::string& id) const;
    // Sorted ids of one suite, or of every suite for "all". Throws Unsupported
    // for an unknown suite.
    std::vector<std::string> ids(const std::string& suite = "all") const;
    // Entries covered by a name: the exact id, or every entry whose id starts
    // with name + "-" or whose group is name. Throws UnknownIdentity.
    std::vector<std::string> resolve(const std::string& name) const;

    // Runs one entry. An override order applies to series identities;
    // oracle-backed entries never exceed their default order, level-100
    // entries never drop below their bound.
    Report verify_entry(const std::string& id, std::optional<long> order = std::nullopt);
    // Runs every entry covered by name and folds the results into one report.
    Report verify(const std::string& name, std::optional<long> order = std::nullopt);
    // Runs the entries on up to `parallel` threads; on_done sees each report
    // as it completes. Returns reports sorted by id.
    std::vector<Report> verify_many(const std::vector<std::string>& ids, std::optional<long> order,
                                    unsigned parallel,
                                    const std::function<void(const Report&)>& on_done = {});

private:
    void warm_up(const std::vector<std::string>& ids);
    Engine& eng_;
    std::map<std::string, const nlohmann::json*> by_id_;
};

// Closed form of a theorem's rank difference generating function, including
// the Lambert tail under the oracle-resolved reading.
QSeries closed_form_R(Engine& engine, long s, long t, long d, long l, long n);
// Rank difference series read off a table.
QSeries empirical_R(const RankTable& table, long s, long t, long d, long l, long n);

// Mock theta layer reports: the Appell-Lerch representation of one mock theta
// function, and the theorem-level identities with their intermediates.
Report hm_representation_check(Catalog& catalog, const std::string& id, long n);
Report theorem_5x_check(Catalog& catalog, const std::string& which, long n);

}  // namespace rankforge
