Inductive nat : Type0 := O : nat | S : nat -> nat.

Definition bad := S S.
