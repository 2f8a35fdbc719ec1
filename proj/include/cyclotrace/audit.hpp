#pragma once

/// Uniform claim-audit registry. Every published identity the other modules
/// can test files a structured verdict here. Claims that desk-check cleanly
/// are registered as assertions (a mismatch files FAIL); claims already
/// known to fail literal evaluation are registered report-only (a mismatch
/// files REPORT_ONLY and can never fail a strict run).

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <iomanip>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "cyclotrace/errors.hpp"

namespace cyclo {

enum class verdict { pass, fail, report_only };

inline const char* to_string(verdict v) {
    switch (v) {
        case verdict::pass: return "PASS";
        case verdict::fail: return "FAIL";
        default: return "REPORT_ONLY";
    }
}

struct audit_entry {
    std::string claim_id;
    std::string paper_anchor;  // section + short quote
    std::string inputs;
    std::string paper_value;
    std::string computed_value;
    verdict v = verdict::report_only;
    std::string notes;
};

enum class claim_mode { assert_claim, report_only_claim };

/// Curated registry: which claims are asserted and which are report-only.
/// Unlisted claim ids default to report-only.
inline claim_mode registered_mode(std::string_view claim_id) {
    static const std::vector<std::string_view> asserted = {
        "gamma.closed_form",
        "prop47.leading",
        "prop47.noncolinear",
        "prop50.fbasis_structure",
        "prop50.wrap_derived",
        "prop52.plus_block_zero",
        "prop54.trace_rank_le_dimv",
        "thm58.dimv_ge_rp",
        "mirimanoff.m1_zero",
        "mirimanoff.m_at_minus_one",
        "kummer.parity",
        "kummer.doubling",
        "kummer.homomorphism",
        "miri_identity.variant_xy_inv",
        "scholie.large_p",
        "bernoulli.irregular_below_300",
        "kummer_congruence.minus_one",
        "kummer_congruence.small_p",
        "triangular.small_p",
        "quad.certify",
        "quad.class_number",
        "quad.search_recovers",
        "quad.unit_321",
    };
    for (auto id : asserted)
        if (claim_id == id) return claim_mode::assert_claim;
    return claim_mode::report_only_claim;
}

struct audit_summary {
    size_t pass = 0, fail = 0, report_only = 0;
    size_t total() const { return pass + fail + report_only; }
};

class audit_report {
  public:
    void file(audit_entry e) {
        auto key = std::make_pair(e.claim_id, e.inputs);
        if (!seen_.insert(key).second)
            throw duplicate_entry(e.claim_id + " / " + e.inputs);
        entries_.push_back(std::move(e));
    }

    /// Treat every claim as asserted, including the registered report-only
    /// ones (run the audit as if each published identity were law).
    void assert_all(bool v) { assert_all_ = v; }

    /// File a checked claim: the verdict follows the registered mode.
    /// Asserted claims become PASS/FAIL; report-only claims stay REPORT_ONLY
    /// with the match outcome spelled out in the notes.
    void check(const std::string& claim_id, const std::string& anchor, const std::string& inputs,
               const std::string& paper_value, const std::string& computed_value, bool matched,
               const std::string& notes = "") {
        audit_entry e{claim_id, anchor, inputs, paper_value, computed_value, verdict::report_only, notes};
        if (assert_all_ || registered_mode(claim_id) == claim_mode::assert_claim) {
            e.v = matched ? verdict::pass : verdict::fail;
        } else {
            e.v = verdict::report_only;
            std::string tag = matched ? "match" : "MISMATCH";
            e.notes = e.notes.empty() ? tag : tag + "; " + e.notes;
        }
        file(std::move(e));
    }

    void merge(audit_report&& other) {
        for (auto& e : other.entries_) file(std::move(e));
        other.entries_.clear();
        other.seen_.clear();
    }

    /// Entries in deterministic order (claim_id, then inputs).
    std::vector<audit_entry> sorted_entries() const {
        auto out = entries_;
        std::sort(out.begin(), out.end(), [](const audit_entry& a, const audit_entry& b) {
            if (a.claim_id != b.claim_id) return a.claim_id < b.claim_id;
            return a.inputs < b.inputs;
        });
        return out;
    }

    const std::vector<audit_entry>& entries() const { return entries_; }

    audit_summary summarize() const {
        audit_summary s;
        for (auto& e : entries_) {
            if (e.v == verdict::pass) ++s.pass;
            else if (e.v == verdict::fail) ++s.fail;
            else ++s.report_only;
        }
        return s;
    }

    bool strict_ok() const { return summarize().fail == 0; }

    std::string render(const std::string& format) const;

  private:
    std::vector<audit_entry> entries_;
    std::set<std::pair<std::string, std::string>> seen_;
    bool assert_all_ = false;
};

namespace detail {

inline std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 8);
    for (char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(ch) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", ch);
                    out += buf;
                } else {
                    out += ch;
                }
        }
    }
    return out;
}

} // namespace detail

inline std::string audit_report::render(const std::string& format) const {
    auto es = sorted_entries();
    std::ostringstream os;
    if (format == "json") {
        for (auto& e : es) {
            os << "{\"claim_id\":\"" << detail::json_escape(e.claim_id) << "\""
               << ",\"paper_anchor\":\"" << detail::json_escape(e.paper_anchor) << "\""
               << ",\"inputs\":\"" << detail::json_escape(e.inputs) << "\""
               << ",\"paper_value\":\"" << detail::json_escape(e.paper_value) << "\""
               << ",\"computed_value\":\"" << detail::json_escape(e.computed_value) << "\""
               << ",\"verdict\":\"" << to_string(e.v) << "\""
               << ",\"notes\":\"" << detail::json_escape(e.notes) << "\"}\n";
        }
        return os.str();
    }
    if (format == "text") {
        auto s = summarize();
        for (auto& e : es) {
            os << std::left << std::setw(12) << to_string(e.v) << e.claim_id << "  [" << e.inputs << "]\n"
               << "    anchor:   " << e.paper_anchor << "\n"
               << "    paper:    " << e.paper_value << "\n"
               << "    computed: " << e.computed_value << "\n";
            if (!e.notes.empty()) os << "    notes:    " << e.notes << "\n";
        }
        os << "summary: " << s.pass << " PASS, " << s.fail << " FAIL, " << s.report_only
           << " REPORT_ONLY (" << s.total() << " entries)\n";
        return os.str();
    }
    throw bad_input("unknown audit render format: " + format);
}

} // namespace cyclo
