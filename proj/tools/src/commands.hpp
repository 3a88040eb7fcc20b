#pragma once

#include "harness.hpp"

namespace qrm::cli {

int cmd_recover_signal(const Options& opt);
int cmd_recover_image(const Options& opt);
int cmd_bench_table1(const Options& opt);
int cmd_bench_table2(const Options& opt);
int cmd_bench_mri(const Options& opt);
int cmd_verify_theory(const Options& opt);

}  // namespace qrm::cli
