EXAMPLE_CATALOG = [
    {
        "id": "ex2.1",
        "anchor": "Example 2.1",
        "quote": "D is not LF",
        "summary": "D = d/dx - y^2 d/dy on Q[x,y]: iterates of y never stabilise; 1 = D(x) but y misses Im D.",
    },
    {
        "id": "ex2.2",
        "anchor": "Example 2.2",
        "quote": "1 = delta(-x) in Im delta",
        "summary": "phi(x) = x + 1, phi(y) = y^2: translates y*1^m of the unit stay outside Im(I - phi).",
    },
    {
        "id": "ex2.3",
        "anchor": "Example 2.3",
        "quote": "the image DI of I under D is not a MS",
        "summary": "D = x d/dx, I = (x^2 - 1): even powers of x lie in DI, odd translates do not.",
    },
    {
        "id": "ex2.4",
        "anchor": "Example 2.4",
        "quote": "maps x to qx",
        "summary": "phi(x) = 2x (q = 2), I = (x^2 - 1): windowed delta(I) repeats the even/odd split.",
    },
    {
        "id": "ex2.5",
        "anchor": "Example 2.5",
        "quote": "Im D is not a MS of F[x]",
        "summary": "d/dx over F_3 and F_5: 1 is in the image, x^(p-1) never is.",
    },
    {
        "id": "ex2.6",
        "anchor": "Example 2.6",
        "quote": "x(x + x^-1)^m not in Im delta",
        "summary": "phi(x) = x^-1 over F_2[x, x^-1]: all powers of x + x^-1 are images, their x-translates are not.",
    },
    {
        "id": "ex2.7",
        "anchor": "Example 2.7",
        "quote": "r(Im delta) = {0}",
        "summary": "I - Frobenius over F_2 and F_3: no nonzero f of degree <= 4 keeps its powers in the image.",
    },
    {
        "id": "ex2.8",
        "anchor": "Example 2.8",
        "quote": "Im(I - phi) is not a MS",
        "summary": "phi(x) = 2x, phi(y) = t*y over Q[t, t^-1]: unit scalars admit x^m, non-units exclude x^m*y.",
    },
    {
        "id": "ex2.9",
        "anchor": "Example 2.9",
        "quote": "r(Im(I - phi_a)) = xZ[x] if a = 0, {0} otherwise",
        "summary": "Z-lattice images of I - phi_a for a in {-1, 0, 1, 2, 3} and their radicals.",
    },
    {
        "id": "ex3.1",
        "anchor": "Example 3.1",
        "quote": "Im D is the principal ideal",
        "summary": "a(x) d/dx for a in {x^2, x + 1, x^2 - 1}: the image equals the truncated ideal (a).",
    },
    {
        "id": "prop5.2",
        "anchor": "Proposition 5.2",
        "quote": "Im(I - phi) = Ker phi",
        "summary": "Random projections and involutions over Q and F_5, plus radicals of involution images.",
    },
    {
        "id": "prop5.4",
        "anchor": "Proposition 5.4",
        "quote": "r(Im delta) = r(Ker phi^i) = r(Ker_{>=1} phi)",
        "summary": "Eventually periodic endomorphisms of split carriers Q^n; Newton's identities certificate.",
    },
    {
        "id": "cor5.5",
        "anchor": "Corollary 5.5",
        "quote": "r(Im(I - phi)) = nil(A)",
        "summary": "x -> -x on Q[x] and the swap on Q[x,y]: every nonzero candidate fails at even powers.",
    },
    {
        "id": "prop6.8",
        "anchor": "Proposition 6.8",
        "quote": "r(Im(I - phi)) = r(Ker_{>=1} phi)",
        "summary": "phi(x) = c for c in {0, 1, 2} and phi(x) = 1 - x on Q[x], windowed radical probes.",
    },
    {
        "id": "thm4.5",
        "anchor": "Theorem 4.5",
        "quote": "0 does not lie in the polytope of f",
        "summary": "Random Laurent polynomials: polytope test against constant terms of powers.",
    },
]
