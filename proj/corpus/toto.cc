(* An inductive family indexed (not parameterised) over a large sort. *)

Inductive nat : Type0 := O : nat | S : nat -> nat.
Inductive bitt : Type0 := b0 : bitt | b1 : bitt.

Inductive toto : Type1 -> Type1 :=
  Y1 : forall (x : Type1), toto x
| Y2 : forall (x : Type1), toto nat -> toto x -> toto x.

Definition tb := Y1 bitt.
Definition tn := Y1 nat.
Definition tm := Y2 bitt tn tb.

Definition code :=
  fun (x : Type1) (v : toto x) =>
  match v as y in toto z return nat with
  | Y1 z => O
  | Y2 z a b => S O
  end.

Check code : forall (x : Type1) (v : toto x), nat.
Check tm : toto bitt.
Eval code bitt tm.
Assert code bitt tm = S O : nat.

Definition totobitt := toto bitt.
Model tb : totobitt depth 4.
Model tm : totobitt depth 6.
