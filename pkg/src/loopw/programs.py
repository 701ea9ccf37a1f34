"""Reference programs used by the tests and scripts."""

from __future__ import annotations

from functools import lru_cache

# Supplied by the harness: the listing below calls Incr without defining it.
INCR = "procedure Incr(A : in int; B : out int) is begin B := A + 1; end;\n"

ACKERMANN = """\
procedure Ack(M : in int; N : in int; R : out int) is
    P : proc(in int, out int) := Incr;
begin
    for I in 1 . . M loop
      declare
        Q : constant proc(in int, out int) := P;
        procedure Aux(S : in int; R : out int) is
          X : int := 0;
        begin
\t  Q(1, X);
\t  for J in 1 . . S loop
\t    Q(X, X);
\t  end loop;
\t  R := X;
        end;
      begin
        P := Aux;
      end;
    end loop;
    P(N, R);
end;
"""



def ackermann_driver(m: int, n: int) -> str:
    """Incr, the listing, and a top-level ``R`` receiving ``Ack(m, n)``."""
    return f"{INCR}\n{ACKERMANN}\nR : int := 0;\nbegin\n  Ack({m}, {n}, R);\nend\n"


@lru_cache(maxsize=None)
def ack(m: int, n: int) -> int:
    """The three-clause recursion, computed directly."""
    if m == 0:
        return n + 1
    if n == 0:
        return ack(m - 1, 1)
    return ack(m - 1, ack(m, n - 1))
