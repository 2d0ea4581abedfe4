#pragma once

// Machine-readable verification certificates. The canonical body (schema,
// params, table, checks, summary) is byte-deterministic for identical
// inputs; wall-clock timings are quarantined in a sidecar section that is
// excluded from the determinism hash.

#include <json.hpp>

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace ltv {

struct CheckResult {
    std::string name;
    std::string anchor;   // stable identifier of the verified statement
    std::string range;    // parameter range the check ran over
    std::string status;   // "pass" | "fail" | "skipped"
    std::string witness;  // minimizing term, counterexample, or note
    long long runtime_ms = 0;
};

inline CheckResult timed_check(const std::string& name, const std::string& anchor,
                               const std::string& range,
                               const std::function<std::pair<bool, std::string>()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    CheckResult r;
    r.name = name;
    r.anchor = anchor;
    r.range = range;
    try {
        auto [ok, witness] = body();
        r.status = ok ? "pass" : "fail";
        r.witness = witness;
    } catch (const std::exception& e) {
        r.status = "fail";
        r.witness = std::string("exception: ") + e.what();
    }
    auto t1 = std::chrono::steady_clock::now();
    r.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    return r;
}

inline std::string fnv1a64_hex(const std::string& s) {
    unsigned long long h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", h);
    return buf;
}

struct Certificate {
    std::string command;
    std::vector<std::pair<std::string, std::string>> params;  // emitted in given order
    std::vector<std::string> table_columns;
    std::vector<std::vector<std::string>> table_rows;
    std::vector<CheckResult> checks;
    int threads = 0;  // performance metadata, sidecar only

    long failed() const {
        long n = 0;
        for (const auto& c : checks)
            if (c.status == "fail") ++n;
        return n;
    }
    int exit_code() const { return failed() == 0 ? 0 : 2; }

    nlohmann::ordered_json body_json() const {
        nlohmann::ordered_json body;
        body["schema"] = "ltv-cert/1";
        body["command"] = command;
        nlohmann::ordered_json p;
        for (const auto& [k, v] : params) p[k] = v;
        body["params"] = std::move(p);
        if (!table_columns.empty()) {
            nlohmann::ordered_json tbl;
            tbl["columns"] = table_columns;
            nlohmann::ordered_json rows = nlohmann::ordered_json::array();
            for (const auto& row : table_rows) rows.push_back(row);
            tbl["rows"] = std::move(rows);
            body["table"] = std::move(tbl);
        }
        nlohmann::ordered_json cs = nlohmann::ordered_json::array();
        long pass = 0, fail = 0, skip = 0;
        for (const auto& c : checks) {
            nlohmann::ordered_json j;
            j["name"] = c.name;
            j["anchor"] = c.anchor;
            j["range"] = c.range;
            j["status"] = c.status;
            if (!c.witness.empty()) j["witness"] = c.witness;
            cs.push_back(std::move(j));
            if (c.status == "pass")
                ++pass;
            else if (c.status == "fail")
                ++fail;
            else
                ++skip;
        }
        body["checks"] = std::move(cs);
        body["summary"] = {{"total", checks.size()}, {"passed", pass}, {"failed", fail},
                           {"skipped", skip}};
        return body;
    }

    std::string to_json() const {
        nlohmann::ordered_json body = body_json();
        std::string canonical = body.dump();
        body["determinism_hash"] = fnv1a64_hex(canonical);
        nlohmann::ordered_json timings;
        if (threads > 0) timings["_threads"] = threads;
        for (const auto& c : checks) timings[c.name] = c.runtime_ms;
        body["timings"] = std::move(timings);
        return body.dump(2) + "\n";
    }

    static std::string csv_escape(const std::string& s) {
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string out = "\"";
        for (char ch : s) {
            if (ch == '"') out += '"';
            out += ch;
        }
        return out + "\"";
    }

    std::string to_csv() const {
        std::string out;
        out += "row_type";
        for (const auto& col : table_columns) out += "," + csv_escape(col);
        if (table_columns.empty()) out += ",name,anchor,range,status,witness";
        out += "\n";
        for (const auto& row : table_rows) {
            out += "table";
            for (const auto& cell : row) out += "," + csv_escape(cell);
            out += "\n";
        }
        if (!table_columns.empty() && !checks.empty()) {
            out += "# checks: name,anchor,range,status,witness\n";
        }
        for (const auto& c : checks) {
            out += "check," + csv_escape(c.name) + "," + csv_escape(c.anchor) + "," +
                   csv_escape(c.range) + "," + c.status + "," + csv_escape(c.witness) + "\n";
        }
        return out;
    }
};

// Independent blocks of checks, evaluated in parallel up to a thread cap
// (LTV_THREADS, default hardware concurrency); results keep task order.
struct CheckTask {
    std::string name;
    std::function<std::vector<CheckResult>()> fn;
};

inline int thread_cap() {
    if (const char* env = std::getenv("LTV_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

inline std::vector<CheckResult> run_tasks(const std::vector<CheckTask>& tasks, int max_threads) {
    std::vector<std::vector<CheckResult>> results(tasks.size());
    std::atomic<size_t> next{0};
    int nthreads = std::max(1, std::min<int>(max_threads, static_cast<int>(tasks.size())));
    auto worker = [&]() {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            try {
                results[i] = tasks[i].fn();
            } catch (const std::exception& e) {
                CheckResult r;
                r.name = tasks[i].name;
                r.anchor = "task";
                r.status = "fail";
                r.witness = std::string("exception: ") + e.what();
                results[i] = {r};
            }
        }
    };
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(nthreads));
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    std::vector<CheckResult> flat;
    for (auto& block : results)
        for (auto& c : block) flat.push_back(std::move(c));
    return flat;
}

}  // namespace ltv
