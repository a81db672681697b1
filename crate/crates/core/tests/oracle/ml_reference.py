"""Reference values for E_{a,b}(x) by brute-force Taylor summation in mpmath.

Working precision grows with the cancellation factor exp(|x|^(1/a)), so every
value is correct to far more digits than f64 holds. Output is written to
../data/ml_reference.csv (alpha, beta, x, value) with 20 significant digits.
"""
import os
import mpmath as mp


def ml_series(a, b, x):
    r = abs(float(x)) ** (1 / float(a))
    mp.mp.dps = 40 + int(r / 2.3)
    a, b, x = mp.mpf(a), mp.mpf(b), mp.mpf(x)
    s = mp.mpf(0)
    k = 0
    tiny = mp.mpf(10) ** (-(mp.mp.dps - 5))
    while True:
        t = mp.power(x, k) * mp.rgamma(a * k + b)
        s += t
        if k > 5 and abs(t) < tiny and True:
            # terms are past their peak once k*a > r
            if k * float(a) > 2 * r + 10:
                break
        k += 1
    return s


ALPHAS = ["1.001", "1.05", "1.3", "1.5", "1.586", "1.6", "1.833", "1.95", "1.999", "2"]
XS = ["-0.5", "-3", "-5", "-5.5", "-8", "-14", "-30", "-49", "-51", "-100", "-400", "-1500",
      "0.5", "3", "8", "20", "49", "60"]


def betas(a):
    fa = float(a)
    out = ["1", "2", a, "0.5", "1.5"]
    out.append(repr(2 * fa - 1))
    return out


def main():
    here = os.path.dirname(os.path.abspath(__file__))
    path = os.path.join(here, "..", "data", "ml_reference.csv")
    rows = []
    for a in ALPHAS:
        for b in betas(a):
            for x in XS:
                r = abs(float(x)) ** (1 / float(a))
                if r > 160:
                    continue
                if float(x) > 0 and r > 60:
                    continue
                v = ml_series(a, b, x)
                rows.append((a, b, x, mp.nstr(v, 20, min_fixed=-1, max_fixed=-1)))
    with open(path, "w") as fh:
        fh.write("alpha,beta,x,value\n")
        for row in rows:
            fh.write(",".join(str(c) for c in row) + "\n")
    print(len(rows), "rows")


if __name__ == "__main__":
    main()
