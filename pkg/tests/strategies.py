from hypothesis import strategies as st

from seatplan import Arrangement, gen_random

GRAPHS = ["path", "cycle", "star", "cluster", "arbitrary", "mixed", "matching"]


@st.composite
def instances(draw, min_n=1, max_n=7, utilities="BSW", **flags):
    n = draw(st.integers(min_n, max_n))
    graph = draw(st.sampled_from(GRAPHS))
    if graph == "matching" and n % 2:
        n += 1
    if graph == "cycle" and n < 3:
        graph = "path"
    seed = draw(st.integers(0, 2**31))
    utility = draw(st.sampled_from(list(utilities)))
    return gen_random(n, graph, seed, utility, **flags)


@st.composite
def arrangements(draw, n):
    return Arrangement(draw(st.permutations(range(n))))


@st.composite
def instance_and_arrangement(draw, **kw):
    inst = draw(instances(**kw))
    return inst, draw(arrangements(inst.n))
