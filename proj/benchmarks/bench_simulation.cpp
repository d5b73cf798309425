// Times the OpenMP simulation path against the serial reference on a
// reduced design and checks that both produce byte-identical reports.

#include <chrono>
#include <iostream>
#include <sstream>

#include <omp.h>

#include "igbayes/study_harness.hpp"

int main(int argc, char** argv) {
  igb::SimDesign design;
  design.sample_sizes = {15, 30};
  design.replications = argc > 1 ? std::stoul(argv[1]) : 20;
  design.mcmc.burn_in = 200;
  design.mcmc.n_keep = 200;
  design.boot.b = 200;
  design.boot.b1 = 200;
  design.boot.b2 = 50;

  using clock = std::chrono::steady_clock;

  auto t0 = clock::now();
  igb::SimReport serial = igb::run_simulation_serial(design);
  auto t1 = clock::now();
  igb::SimReport parallel = igb::run_simulation(design);
  auto t2 = clock::now();

  std::ostringstream serial_csv, parallel_csv;
  igb::write_report_csv(serial, serial_csv);
  igb::write_report_csv(parallel, parallel_csv);

  double serial_s = std::chrono::duration<double>(t1 - t0).count();
  double parallel_s = std::chrono::duration<double>(t2 - t1).count();
  std::cout << "replications per sample size: " << design.replications << '\n';
  std::cout << "threads: " << omp_get_max_threads() << '\n';
  std::cout << "serial:   " << serial_s << " s\n";
  std::cout << "parallel: " << parallel_s << " s\n";
  std::cout << "speedup:  " << serial_s / parallel_s << "x\n";

  if (serial_csv.str() != parallel_csv.str()) {
    std::cout << "FAIL: serial and parallel reports differ\n";
    return 1;
  }
  std::cout << "reports byte-identical\n";
  return 0;
}
