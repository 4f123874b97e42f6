#include "lamlab/deep_stack.hpp"

#include "lamlab/errors.hpp"

#include <exception>
#include <pthread.h>

namespace lamlab {

namespace {

thread_local bool tl_deep = false;

struct Job {
    const std::function<void()>* fn;
    std::exception_ptr error;
};

void* trampoline(void* p) {
    auto* job = static_cast<Job*>(p);
    tl_deep = true;
    try {
        (*job->fn)();
    } catch (...) {
        job->error = std::current_exception();
    }
    return nullptr;
}

} // namespace

bool on_deep_stack() { return tl_deep; }

void run_on_deep_stack(const std::function<void()>& fn, std::size_t stack_bytes) {
    if (tl_deep) {
        fn();
        return;
    }
    Job job{&fn, nullptr};
    pthread_attr_t attr;
    pthread_attr_init(&attr);
    pthread_attr_setstacksize(&attr, stack_bytes);
    pthread_t th;
    int rc = pthread_create(&th, &attr, trampoline, &job);
    pthread_attr_destroy(&attr);
    if (rc != 0) throw ResourceError("cannot start evaluation thread");
    pthread_join(th, nullptr);
    if (job.error) std::rethrow_exception(job.error);
}

} // namespace lamlab
