#pragma once
// CSV emission helpers. Every command formats floats through fmt_double so
// reruns with the same inputs produce byte-identical files.

#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <string>
#include <vector>

#include "entroscope/corpus.hpp"

namespace entroscope {

inline std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

class CsvWriter {
public:
    explicit CsvWriter(const std::string& path) : out_(path) {
        if (!out_) throw Error("cannot open for writing: " + path);
    }

    void row(std::initializer_list<std::string> cells) {
        write_cells(cells.begin(), cells.end());
    }

    void row_vector(const std::vector<std::string>& cells) {
        write_cells(cells.begin(), cells.end());
    }

private:
    template <typename It>
    void write_cells(It begin, It end) {
        for (It it = begin; it != end; ++it) {
            if (it != begin) out_ << ',';
            out_ << *it;
        }
        out_ << '\n';
    }

    std::ofstream out_;
};

}  // namespace entroscope
