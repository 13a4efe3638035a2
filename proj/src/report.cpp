#include "padyn/report.hpp"

#include <filesystem>
#include <fstream>

#include "padyn/errors.hpp"
#include "padyn/version.hpp"

namespace padyn {
namespace {

std::string field_text(const Record& r, const char* key) {
    if (!r.contains(key)) return "";
    const auto& v = r.at(key);
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    return v.dump();
}

void write_file(const std::filesystem::path& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidArgument("cannot open for writing: " + path.string());
    out << body;
    if (!out) throw InvalidArgument("write failed: " + path.string());
}

}  // namespace

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

std::string ReportWriter::ndjson() const {
    std::string out;
    for (const Record& r : records_) {
        out += r.dump();
        out += '\n';
    }
    return out;
}

std::string ReportWriter::csv() const {
    std::string out = "suite,check,instance,pass,detail\n";
    for (const Record& r : records_) {
        if (!r.contains("check")) continue;  // meta and trajectory records are ndjson-only
        out += csv_escape(field_text(r, "suite")) + ',';
        out += csv_escape(field_text(r, "check")) + ',';
        out += csv_escape(field_text(r, "instance")) + ',';
        out += csv_escape(field_text(r, "pass")) + ',';
        out += csv_escape(field_text(r, "detail")) + '\n';
    }
    return out;
}

void ReportWriter::write(const std::string& dir, bool write_csv, bool write_records) const {
    std::filesystem::path base(dir);
    std::filesystem::create_directories(base);
    if (write_csv) write_file(base / "report.csv", csv());
    if (write_records) write_file(base / "report.ndjson", ndjson());
}

std::string rational_str(const mpq_class& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string valuation_str(const ExtValuation& v) { return v.str(); }

Record meta_record(long p, const std::string& a, const std::string& b, int precision,
                   std::uint64_t seed) {
    Record r;
    r["record"] = "meta";
    r["version"] = kVersion;
    r["p"] = p;
    r["a"] = a;
    r["b"] = b;
    r["precision"] = precision;
    r["seed"] = seed;
    return r;
}

}  // namespace padyn
