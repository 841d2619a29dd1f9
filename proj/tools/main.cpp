// Copyright 2026 The sapeval Authors
// SPDX-License-Identifier: Apache-2.0

#include <csignal>
#include <iostream>

#include "cli.hpp"

namespace {

extern "C" void on_signal(int) { sapeval::cli::request_shutdown(); }

}  // namespace

int main(int argc, char** argv) {
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  return sapeval::cli::run(argc, argv, std::cin, std::cout, std::cerr);
}
