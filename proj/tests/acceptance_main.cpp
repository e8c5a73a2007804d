// Acceptance gate: eight end-to-end criteria, one pass/fail line each.
// Exits nonzero when any criterion fails.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "regsys/canonical.hpp"
#include "regsys/cli.hpp"
#include "regsys/equivalence.hpp"
#include "regsys/io.hpp"

using namespace regsys;

namespace {

struct Check {
    bool ok = true;
    std::string detail;

    void expect(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

std::string data_path(const std::string& name) {
    return std::string(REGSYS_TEST_DATA_DIR) + "/" + name;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

LinSys golden_system() {
    nlohmann::json j = nlohmann::json::parse(read_file(data_path("z210_system.json")));
    return system_from_document(document_from_json(j));
}

LinSys random_system(Rng& rng, const Ring& ring, int n, int m) {
    Mat a = random_matrix(rng, ring, n, n);
    Mat b = random_matrix(rng, ring, n, m);
    return LinSys(a, b);
}

LinSys random_reachable(Rng& rng, const Ring& ring, int n, int m) {
    for (;;) {
        LinSys s = random_system(rng, ring, n, m);
        if (is_reachable(s)) return s;
    }
}

// 1. The four-state example decomposes into the three expected components and
//    the CLI report matches the checked-in golden file byte for byte, < 1 s.
Check criterion_golden() {
    Check c;

    std::string path = data_path("z210_system.json");
    std::vector<const char*> argv = {"regsys", "canonical", path.c_str()};
    std::istringstream in;
    std::ostringstream out, err;
    int code = cli_main(static_cast<int>(argv.size()), argv.data(), in, out, err);
    c.expect(code == 0, "canonical run failed: " + err.str());
    c.expect(out.str() == read_file(data_path("z210_canonical.json")),
             "report differs from the golden file");

    Ring ring = make_ring(210);
    CanonicalDecomposition dec = canonical_decomposition(golden_system());
    c.expect(dec.components.size() == 3, "expected three components");
    if (dec.components.size() == 3) {
        const auto& c36 = dec.components[0];
        const auto& c70 = dec.components[1];
        const auto& c105 = dec.components[2];
        c.expect(c36.e.value() == 36 && c70.e.value() == 70 && c105.e.value() == 105,
                 "idempotents are not {36, 70, 105}");
        c.expect(c36.kronecker_indices == std::vector<int>{2, 1, 1},
                 "36-component indices are not (2,1,1)");
        c.expect(c36.c_hat.rows() == 0, "36-component should be reachable");
        auto [a36, b36] = brunovski_block({2, 1, 1}, 4, c36.e);
        c.expect(c36.a_hat == a36 && c36.b_hat == b36,
                 "36-component is not the Brunovski pair");
        c.expect(c70.kronecker_indices == std::vector<int>{3},
                 "70-component indices are not (3)");
        c.expect(c70.c_hat == Mat::from_rows(ring, {{140}}),
                 "70-component similarity block is not [[140]]");
        c.expect(c105.kronecker_indices.empty() && c105.c_hat.rows() == 4,
                 "105-component should be a 4x4 similarity block");
    }
    return c;
}

// 2. The three displayed intermediate pairs are reproduced entry for entry.
Check criterion_projections() {
    Check c;
    Ring ring = make_ring(210);
    LinSys s = golden_system();

    Mat disp105a = Mat::from_rows(ring, {{105, 0, 105, 105},
                                         {0, 0, 105, 105},
                                         {105, 0, 0, 0},
                                         {105, 0, 105, 105}});
    LinSys p105 = project(s, RingElement(ring, 105));
    c.expect(p105.a == disp105a, "105-projection A differs");
    c.expect(p105.b == Mat::zero(ring, 4, 4), "105-projection B differs");

    CanonicalDecomposition dec = canonical_decomposition(s);
    if (dec.components.size() != 3) {
        c.expect(false, "expected three components");
        return c;
    }
    LinSys s70 = component_system(dec.components[1]);
    Mat disp70a = Mat::from_rows(ring, {{0, 0, 0, 0},
                                        {70, 0, 0, 0},
                                        {0, 70, 0, 0},
                                        {0, 0, 0, 140}});
    Mat disp70b = Mat::from_rows(ring, {{70, 0, 0, 0},
                                        {0, 0, 0, 0},
                                        {0, 0, 0, 0},
                                        {0, 0, 0, 0}});
    c.expect(s70.a == disp70a, "70-component A differs");
    c.expect(s70.b == disp70b, "70-component B differs");

    LinSys s36 = reduce_form(component_system(dec.components[0])).sys;
    Mat disp36a = Mat::from_rows(ring, {{0, 0, 0, 0},
                                        {0, 0, 0, 0},
                                        {0, 0, 0, 0},
                                        {36, 0, 0, 0}});
    Mat disp36b = Mat::from_rows(ring, {{36, 0, 0, 0},
                                        {0, 36, 0, 0},
                                        {0, 0, 36, 0},
                                        {0, 0, 0, 0}});
    c.expect(s36.a == disp36a, "36-part reduced A differs");
    c.expect(s36.b == disp36b, "36-part reduced B differs");
    return c;
}

// 3. Complete invariants do not move under the feedback action.
Check criterion_invariance() {
    Check c;

    LinSys g = golden_system();
    InvariantSummary base = invariants_of(g);
    for (int i = 0; i < 100; ++i) {
        FeedbackTransform t = random_feedback(g.ring(), 4, 4, 10'000 + i);
        if (invariants_of(apply_feedback(g, t)) != base) {
            c.expect(false, "four-state summary moved at seed " + std::to_string(10'000 + i));
            return c;
        }
    }

    Ring r30 = make_ring(30);
    Rng rng(31337);
    for (int i = 0; i < 50; ++i) {
        int n = 1 + static_cast<int>(rng.below(4));
        int m = 1 + static_cast<int>(rng.below(3));
        LinSys s = random_system(rng, r30, n, m);
        InvariantSummary before = invariants_of(s);
        FeedbackTransform t = random_feedback(r30, n, m, 20'000 + i);
        if (invariants_of(apply_feedback(s, t)) != before) {
            c.expect(false, "Z/30 summary moved at case " + std::to_string(i));
            return c;
        }
    }
    return c;
}

// 4. Exhaustive completeness at desk scale: summary fibers over Z/6 with
//    (n, m) = (2, 1) coincide with the feedback orbits.
Check criterion_exhaustive() {
    Check c;
    Ring r6 = make_ring(6);
    const std::uint64_t total = 46656; // 6^(4+2)

    std::map<std::string, std::vector<std::uint64_t>> fibers;
    for (std::uint64_t code = 0; code < total; ++code) {
        LinSys s = decode_system(r6, 2, 1, code);
        fibers[invariants_of(s).key()].push_back(code);
    }

    std::vector<bool> seen(total, false);
    std::size_t orbit_count = 0;
    for (std::uint64_t code = 0; code < total; ++code) {
        if (seen[code]) continue;
        LinSys s = decode_system(r6, 2, 1, code);
        std::vector<std::uint64_t> orbit = orbit_bfs(s);
        ++orbit_count;
        for (std::uint64_t member : orbit) {
            if (seen[member]) {
                c.expect(false, "orbits overlap at code " + std::to_string(member));
                return c;
            }
            seen[member] = true;
        }
        // the orbit must be exactly the fiber of its invariant
        auto it = fibers.find(invariants_of(s).key());
        if (it == fibers.end() || it->second != orbit) {
            c.expect(false, "fiber and orbit differ for code " + std::to_string(code));
            return c;
        }
    }
    c.expect(orbit_count == fibers.size(),
             "orbit and fiber counts differ: " + std::to_string(orbit_count) + " vs " +
                 std::to_string(fibers.size()));
    c.detail = std::to_string(orbit_count) + " orbits";
    return c;
}

// 5. The reachable fast path agrees with the canonical decision.
Check criterion_reachable_agreement() {
    Check c;
    Ring r30 = make_ring(30);
    Rng rng(271828);
    for (int i = 0; i < 200; ++i) {
        int n = 1 + static_cast<int>(rng.below(4));
        int m = 1 + static_cast<int>(rng.below(3));
        LinSys s1 = random_reachable(rng, r30, n, m);
        LinSys s2 = (i % 2 == 0)
                        ? apply_feedback(s1, random_feedback(r30, n, m, 40'000 + i))
                        : random_reachable(rng, r30, n, m);
        bool nk = reachable_equivalent(s1, s2);
        bool canon = feedback_equivalent(s1, s2).equivalent;
        if (nk != canon) {
            c.expect(false, "disagreement at case " + std::to_string(i));
            return c;
        }
        if (i % 2 == 0 && !canon) {
            c.expect(false, "transformed copy not recognized at case " + std::to_string(i));
            return c;
        }
    }
    return c;
}

// 6. Smith form properties and uniqueness of the invariant factors.
Check criterion_smith() {
    Check c;
    Ring ring = make_ring(210);
    Rng rng(161803);
    for (int i = 0; i < 500; ++i) {
        int rows = 1 + static_cast<int>(rng.below(5));
        int cols = 1 + static_cast<int>(rng.below(5));
        Mat b = random_matrix(rng, ring, rows, cols);
        SmithForm s = smith_form(b);
        if (s.u * b * s.v != s.diag) {
            c.expect(false, "U*B*V != D at case " + std::to_string(i));
            return c;
        }
        if (!is_invertible(s.u) || !is_invertible(s.v)) {
            c.expect(false, "transform not invertible at case " + std::to_string(i));
            return c;
        }
        for (std::size_t k = 0; k < s.d.size(); ++k) {
            bool idem = s.d[k] != 0 && ring->is_idempotent(s.d[k]);
            bool chain = k + 1 >= s.d.size() || ring->mul(s.d[k], s.d[k + 1]) == s.d[k + 1];
            if (!idem || !chain) {
                c.expect(false, "invariant factor chain broken at case " + std::to_string(i));
                return c;
            }
        }
        Mat u2 = random_invertible(rng, ring, rows);
        Mat v2 = random_invertible(rng, ring, cols);
        if (smith_form(u2 * b * v2).d != s.d) {
            c.expect(false, "factors moved under equivalence at case " + std::to_string(i));
            return c;
        }
    }
    return c;
}

// 7. Single-input canonical chain against the reachability module.
Check criterion_single_input() {
    Check c;
    for (std::uint64_t mod : {6ull, 30ull}) {
        Ring ring = make_ring(mod);
        Rng rng(mod * 9001);
        for (int i = 0; i < 100; ++i) {
            int n = 1 + static_cast<int>(rng.below(4));
            LinSys s = random_system(rng, ring, n, 1);
            SingleInputForm f = single_input_canonical(s);

            std::vector<std::uint64_t> want = smith_form(reachability_matrix(s, n)).d;
            want.resize(static_cast<std::size_t>(n), 0);
            if (f.d != want) {
                c.expect(false, "chain != full reachability factors, Z/" + std::to_string(mod) +
                                    " case " + std::to_string(i));
                return c;
            }

            auto nk = nk_invariant_factors(s);
            for (int k = 1; k <= n; ++k) {
                std::vector<std::uint64_t> prefix;
                for (int j = 0; j < k; ++j)
                    if (f.d[static_cast<std::size_t>(j)] != 0)
                        prefix.push_back(f.d[static_cast<std::size_t>(j)]);
                if (nk[static_cast<std::size_t>(k) - 1] != prefix) {
                    c.expect(false, "N_k factors != chain prefix, Z/" + std::to_string(mod) +
                                        " case " + std::to_string(i));
                    return c;
                }
            }
        }
    }
    return c;
}

// 8. Every emitted witness realizes the equivalence exactly.
Check criterion_witnesses() {
    Check c;
    Ring r30 = make_ring(30);
    Rng rng(141421);
    for (int i = 0; i < 50; ++i) {
        int n = 1 + static_cast<int>(rng.below(4));
        int m = 1 + static_cast<int>(rng.below(3));
        LinSys s1 = random_system(rng, r30, n, m);
        LinSys s2 = apply_feedback(s1, random_feedback(r30, n, m, 50'000 + i));
        EquivalenceVerdict v = feedback_equivalent(s1, s2, true);
        if (!v.equivalent || !v.witness) {
            c.expect(false, "missing witness at case " + std::to_string(i));
            return c;
        }
        if (apply_feedback(s1, *v.witness) != s2) {
            c.expect(false, "witness does not verify at case " + std::to_string(i));
            return c;
        }
    }
    return c;
}

struct Criterion {
    int number;
    std::string description;
    double budget_seconds;
    std::function<Check()> run;
};

} // namespace

int main() {
    std::vector<Criterion> criteria = {
        {1, "four-state golden decomposition is bit-exact", 1.0, criterion_golden},
        {2, "displayed component projections reproduce entry-for-entry", 0.0,
         criterion_projections},
        {3, "invariants are stable under 150 seeded feedback moves", 30.0,
         criterion_invariance},
        {4, "Z/6 (2,1) summary fibers equal the 46656-system feedback orbits", 600.0,
         criterion_exhaustive},
        {5, "reachable fast path agrees with canonical on 200 seeded pairs", 0.0,
         criterion_reachable_agreement},
        {6, "Smith form properties hold on 500 random Z/210 matrices", 0.0, criterion_smith},
        {7, "single-input chains match reachability factors on 200 systems", 0.0,
         criterion_single_input},
        {8, "all 50 seeded equivalence witnesses verify exactly", 0.0, criterion_witnesses},
    };

    int failed = 0;
    for (const auto& cr : criteria) {
        auto start = std::chrono::steady_clock::now();
        Check result;
        try {
            result = cr.run();
        } catch (const std::exception& e) {
            result.ok = false;
            result.detail = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                          .count();
        if (result.ok && cr.budget_seconds > 0 && secs >= cr.budget_seconds) {
            result.ok = false;
            result.detail = "over time budget of " + std::to_string(cr.budget_seconds) + "s";
        }
        std::ostringstream line;
        line << (result.ok ? "[PASS] " : "[FAIL] ") << cr.number << ": " << cr.description;
        if (!result.detail.empty()) line << " (" << result.detail << ")";
        line.setf(std::ios::fixed);
        line.precision(3);
        line << " [" << secs << "s]";
        std::cout << line.str() << std::endl;
        if (!result.ok) ++failed;
    }

    if (failed == 0) {
        std::cout << "ACCEPTANCE: 8/8 criteria passed" << std::endl;
        return 0;
    }
    std::cout << "ACCEPTANCE: " << (8 - failed) << "/8 criteria passed, " << failed
              << " failed" << std::endl;
    return 1;
}
