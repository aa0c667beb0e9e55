; expect: unsafe
; the loop has no guard, so x reaches 6
(declare-var x Int)
(init (= x 0))
(trans (= x' (+ x 1)))
(good (<= x 5))
