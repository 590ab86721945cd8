#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "inputs.hpp"
#include "report_io.hpp"

namespace noisestab::cli {

struct AnalyzeOptions {
    FunctionSource f;
    FunctionShape shape;
    int r = 1;
    double alpha = 0.1;
};

struct StabilityOptions {
    FunctionSource f;
    FunctionSource g;
    FunctionShape shape;
    std::string rho_grid = "0.5";
    std::string distribution;
    std::string epsilons = "0.1,0.5";
};

struct GaussOptions {
    double mu1 = 0.5;
    double mu2 = 0.5;
    std::string rho_grid = "0.5";
};

struct TreeOptions {
    std::string kind = "influence";
    FunctionSource f;
    FunctionSource g;
    FunctionSource h;
    FunctionShape shape;
    std::string distribution = "correlated_bits:0.5";
    double tau = 0.25;
    double epsilon = 0.1;
    int r = 1;
    double alpha = 0.25;
};

struct CertifyOptions {
    FunctionSource f;
    FunctionSource g;
    FunctionShape shape;
    int r = 1;
    double alpha = 0.1;
};

struct ParamsOptions {
    std::string epsilons = "0.05,0.1,0.25,0.5";
    std::string rhos = "0,0.5,0.9";
    int ell = 2;
    double pi_star = 0.5;
    std::optional<double> tau;
};

struct VerifyOptions {
    std::string theorem = "two";
    FunctionSource f;
    FunctionSource g;
    FunctionSource h;
    FunctionShape shape;
    double rho = 0.5;
    double epsilon = 0.05;
    int r = 1;
    double alpha = 0.15;
    int m = 1;
    double beta = 0.1;
    std::string distribution = "f3_chain";
};

struct ArrowOptions {
    std::string family = "majority";
    std::vector<int> ns{3, 5, 7, 9};
};

struct F3Options {
    FunctionSource f;
    FunctionSource g;
    FunctionSource h;
    FunctionShape shape;
};

int run_analyze(const Common& c, const AnalyzeOptions& o, std::ostream& out);
int run_stability(const Common& c, const StabilityOptions& o, std::ostream& out);
int run_gauss(const Common& c, const GaussOptions& o, std::ostream& out);
int run_tree(const Common& c, const TreeOptions& o, std::ostream& out);
int run_certify(const Common& c, const CertifyOptions& o, std::ostream& out);
int run_params(const Common& c, const ParamsOptions& o, std::ostream& out);
int run_verify(const Common& c, const VerifyOptions& o, std::ostream& out);
int run_arrow(const Common& c, const ArrowOptions& o, std::ostream& out);
int run_example_f3(const Common& c, const F3Options& o, std::ostream& out);

}  // namespace noisestab::cli
