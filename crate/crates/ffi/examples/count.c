/* Counts the maps with 5 vertices on the projective plane.
 *
 *   cargo build --release -p surfmaps-ffi
 *   cc crates/ffi/examples/count.c -Icrates/ffi/include \
 *      target/release/libsurfmaps_ffi.a -lpthread -ldl -lm -o count
 */
#include <stdio.h>

#include "surfmaps.h"

static int on_map(void *ctx, const SmMap *map) {
    (void)map;
    ++*(unsigned long *)ctx;
    return 0;
}

int main(void) {
    SmGenerator *gen = NULL;
    if (sm_generator_new(1, 0, SM_CLASS_ALL, NULL, &gen) != SM_STATUS_OK) {
        fprintf(stderr, "%s\n", sm_last_error_message());
        return 1;
    }
    unsigned long seen = 0;
    uint64_t counts[9];
    SmStatus s = sm_generator_run(gen, 5, on_map, &seen, counts);
    sm_generator_free(gen);
    if (s != SM_STATUS_OK) {
        fprintf(stderr, "%s\n", sm_last_error_message());
        return 1;
    }
    printf("%lu maps (closed 2-cell %llu, polyhedral %llu)\n", seen,
           (unsigned long long)counts[7], (unsigned long long)counts[6]);
    return 0;
}
