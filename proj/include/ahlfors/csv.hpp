#pragma once

#include <cstdio>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "ahlfors/lattice.hpp"

namespace ahlfors {

// All CSV output: comma-separated, header row, 17 significant digits, LF endings.
inline std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

class CsvWriter {
  public:
    explicit CsvWriter(std::ostream& os) : os_(os) {}

    void header(const std::vector<std::string>& cols) { row_strings(cols); }

    template <class... Ts>
    void row(Ts... vals) {
        bool first = true;
        ((os_ << (first ? "" : ",") << field(vals), first = false), ...);
        os_ << "\n";
    }

  private:
    static std::string field(double v) { return fmt17(v); }
    static std::string field(int v) { return std::to_string(v); }
    static std::string field(long v) { return std::to_string(v); }
    static std::string field(long long v) { return std::to_string(v); }
    static std::string field(size_t v) { return std::to_string(v); }
    static std::string field(const char* v) { return v; }
    static std::string field(const std::string& v) { return v; }

    void row_strings(const std::vector<std::string>& cols) {
        for (size_t i = 0; i < cols.size(); ++i) os_ << (i ? "," : "") << cols[i];
        os_ << "\n";
    }

    std::ostream& os_;
};

inline void write_locus_csv(std::ostream& os, const ZeroLocus& locus) {
    CsvWriter w(os);
    w.header({"re", "im", "annulus_index", "offset_re", "offset_im", "case_tag"});
    for (const auto& p : locus.points())
        w.row(p.pos.real(), p.pos.imag(), p.annulus, p.offset.real(), p.offset.imag(),
              case_tag_name(p.tag));
}

}  // namespace ahlfors
