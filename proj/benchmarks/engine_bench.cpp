#include "lamlab/corpus.hpp"
#include "lamlab/deep_stack.hpp"
#include "lamlab/engine.hpp"
#include "lamlab/equivalence.hpp"
#include "lamlab/factorial.hpp"

#include <benchmark/benchmark.h>

using namespace lamlab;

namespace {

const std::vector<Term>& corpus() {
    static const std::vector<Term> terms = generate({7, 30, {}, 0.5}, 200);
    return terms;
}

void BM_Factorial(benchmark::State& state, const char* alias, FactorialEncoding enc) {
    StrategySpec s = parse_spec(alias);
    Term t = factorial_term(enc, static_cast<int>(state.range(0)));
    EvalOptions opts;
    opts.record_trace = false;
    for (auto _ : state) benchmark::DoNotOptimize(eval(s, t, 10000000, opts));
}

void BM_CorpusEval(benchmark::State& state, const char* alias) {
    StrategySpec s = parse_spec(alias);
    EvalOptions opts;
    opts.record_trace = false;
    for (auto _ : state)
        for (const Term& t : corpus()) benchmark::DoNotOptimize(eval(s, t, 2000, opts));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(corpus().size()));
}

void BM_Compare(benchmark::State& state) {
    StrategySpec a = parse_spec("(RE)R.ISS"), b = parse_spec("sn");
    for (auto _ : state)
        for (const Term& t : corpus()) benchmark::DoNotOptimize(compare(a, b, t, 2000));
}

void BM_ParsePrint(benchmark::State& state) {
    std::vector<std::string> texts;
    for (const Term& t : corpus()) texts.push_back(print_term(t));
    for (auto _ : state)
        for (const auto& s : texts) benchmark::DoNotOptimize(print_term(parse_term(s)));
}

} // namespace

BENCHMARK_CAPTURE(BM_Factorial, no, "no", FactorialEncoding::Direct)->Arg(2)->Arg(3);
BENCHMARK_CAPTURE(BM_Factorial, sn, "sn", FactorialEncoding::ThunkLambda)->Arg(2)->Arg(3);
BENCHMARK_CAPTURE(BM_Factorial, so, "so", FactorialEncoding::DelimCps)->Arg(2)->Arg(3);
BENCHMARK_CAPTURE(BM_CorpusEval, bn, "bn");
BENCHMARK_CAPTURE(BM_CorpusEval, no, "no");
BENCHMARK_CAPTURE(BM_CorpusEval, am, "am");
BENCHMARK(BM_Compare);
BENCHMARK(BM_ParsePrint);

int main(int argc, char** argv) {
    int rc = 0;
    run_on_deep_stack([&] {
        benchmark::Initialize(&argc, argv);
        if (benchmark::ReportUnrecognizedArguments(argc, argv)) {
            rc = 1;
            return;
        }
        benchmark::RunSpecifiedBenchmarks();
        benchmark::Shutdown();
    });
    return rc;
}
