// radlab is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#ifndef RADLAB_CSV_H
#define RADLAB_CSV_H

#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "radlab/config.h"

namespace radlab {

// Minimal CSV emitter. Values are written verbatim; use format_double for
// numbers so files are byte-stable in deterministic mode. Lines starting
// with '#' carry run metadata.
class CsvWriter {
  public:
    explicit CsvWriter(const std::string &path) : out_(path) {
        if (!out_) throw std::runtime_error("cannot open csv file: " + path);
    }

    void comment(const std::string &text) { out_ << "# " << text << "\n"; }

    void row(const std::vector<std::string> &cells) {
        for (size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ",";
            out_ << cells[i];
        }
        out_ << "\n";
    }

  private:
    std::ofstream out_;
};

} // namespace radlab

#endif
