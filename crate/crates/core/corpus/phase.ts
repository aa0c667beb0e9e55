; expect: safe
; y starts counting once x passes 4; needs a disjunctive invariant
(declare-var x Int)
(declare-var y Int)
(init (and (= x 0) (= y 0)))
(trans (or (and (< x 4) (= x' (+ x 1)) (= y' y))
           (and (>= x 4) (= x' (+ x 1)) (= y' (+ y 1)))))
(good (=> (<= x 4) (= y 0)))
