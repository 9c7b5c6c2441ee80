Check Type0 : Type0.
