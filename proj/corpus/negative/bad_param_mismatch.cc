Inductive q (A : Type0) : Type0 := mkq : q (A -> A).
