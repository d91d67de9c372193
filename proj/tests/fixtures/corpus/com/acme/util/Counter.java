package com.acme.util;

import java.util.Comparator;
import java.util.HashMap;
import java.util.Map;

public class Counter {
    private final Map<String, Integer> counts = new HashMap<>();
    private int total;

    public void add(String key) {
        counts.merge(key, 1, Integer::sum);
        total++;
    }

    public int get(String key) {
        Integer n = counts.get(key);
        return n != null ? n : 0;
    }

    public Comparator<String> byCount() {
        return new Comparator<String>() {
            @Override
            public int compare(String a, String b) {
                if (get(a) != get(b)) {
                    return get(b) - get(a);
                }
                return a.compareTo(b);
            }
        };
    }

    public int distinct() {
        return (int) counts.keySet().stream().filter(k -> counts.get(k) > 0 && total > 0).count();
    }
}
