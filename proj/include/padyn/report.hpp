#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "padyn/padic.hpp"
#include "padyn/valuation.hpp"

namespace padyn {

// One machine-readable record. Field order is fixed (ordered_json) and no
// floating-point or timing data ever enters: identical (config, seed,
// version) must reproduce the files byte for byte.
using Record = nlohmann::ordered_json;

class ReportWriter {
public:
    void add(Record r) { records_.push_back(std::move(r)); }

    const std::vector<Record>& records() const { return records_; }

    // One JSON object per line.
    std::string ndjson() const;

    // Fixed columns: suite,check,instance,pass,detail.
    std::string csv() const;

    // Writes <dir>/report.ndjson and/or <dir>/report.csv; creates dir.
    void write(const std::string& dir, bool write_csv, bool write_records) const;

private:
    std::vector<Record> records_;
};

std::string csv_escape(const std::string& s);

// Serialization helpers: exact rationals as "num/den", valuations as
// integer strings or "inf".
std::string rational_str(const mpq_class& q);
std::string valuation_str(const ExtValuation& v);

Record meta_record(long p, const std::string& a, const std::string& b, int precision,
                   std::uint64_t seed);

}  // namespace padyn
