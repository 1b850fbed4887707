#include <stdio.h>
#include "poset_assoc.h"

int main(void) {
    size_t parts[] = {1, 2, 2};
    PaPoset *p = NULL;
    if (pa_poset_complete_graded(parts, 3, &p) != PA_STATUS_OK) {
        fprintf(stderr, "%s\n", pa_last_error());
        return 1;
    }
    uint64_t f[8];
    size_t len = 0;
    pa_f_vector(p, f, 8, &len);
    printf("f =");
    for (size_t i = 0; i < len; i++) printf(" %llu", (unsigned long long)f[i]);
    printf("\n");

    bool eq = false;
    pa_equivalent_to_permutohedron(p, 4, &eq);
    printf("permutohedron: %s\n", eq ? "yes" : "no");

    PaPoset *q = NULL;
    PaStatus st = pa_poset_flip(p, "x1_1,x3_1", &q);
    printf("flip non-autonomous: status %d (%s)\n", (int)st, pa_last_error());
    pa_poset_free(p);
    return 0;
}
