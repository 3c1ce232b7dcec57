"""Instances used only by the tests."""
from artifact import catalog
from artifact.algebra import GroupAction, GroupHom, cyclic_group, direct_product, trivial_group
from artifact.twogroup import CrossedModule


def s3_over_trivial() -> CrossedModule:
    """H = S3 over G = 1 with trivial action: the Peiffer identity fails."""
    S3 = catalog.groups()["S3"]
    E = trivial_group()
    return CrossedModule(S3, E, GroupAction(E, S3.elements, [list(range(S3.order))], "trivial"),
                         GroupHom(S3, E, [0] * S3.order, "collapse"), "S3 over 1")


def abelian_group(orders):
    G = cyclic_group(orders[0])
    for n in orders[1:]:
        G = direct_product(G, cyclic_group(n))
    return G
