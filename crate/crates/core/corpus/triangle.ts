; expect: unsafe
; y accumulates 0 + 1 + 2 + ..., reaching 10 after five steps
(declare-var x Int)
(declare-var y Int)
(init (and (= x 0) (= y 0)))
(trans (and (= x' (+ x 1)) (= y' (+ y x))))
(good (<= y 9))
