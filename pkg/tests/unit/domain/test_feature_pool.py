"""Tests for FeaturePool and NovelQueue."""
import math
from collections import Counter

import pytest

from src.domain.entities.feature import Feature
from src.domain.entities.feature_pool import FeaturePool, NovelQueue
from tests.fixtures.sample_data import FLEX_STRUCT, generated_features


class TestFeaturePool:
    """Test pool insertion, sampling and rewards."""

    def test_insert_is_idempotent_by_id(self):
        """Test re-inserting the same description keeps the first entry."""
        pool = FeaturePool()
        assert pool.insert(Feature.create(FLEX_STRUCT, witness="first"))
        assert not pool.insert(Feature.create(FLEX_STRUCT, witness="second"))
        assert len(pool) == 1
        assert pool.get(Feature.create(FLEX_STRUCT).id).witness == "first"

    def test_insertion_order_preserved(self):
        """Test features() follows the insertion log."""
        items = generated_features(5)
        pool = FeaturePool(items)
        assert [f.id for f in pool.features()] == [f.id for f in items]
        assert pool.insertion_log == [f.id for f in items]

    def test_sample_is_reproducible(self):
        """Test the same seed yields the same sample."""
        pool = FeaturePool(generated_features(20))
        first = [f.id for f in pool.sample(5, seed=42)]
        second = [f.id for f in pool.sample(5, seed=42)]
        assert first == second
        assert len(set(first)) == 5

    def test_sample_is_uniform(self):
        """Test each feature is drawn within 3 sigma of 1/5 over 10,000 draws."""
        items = generated_features(5)
        pool = FeaturePool(items)
        counts = Counter(pool.sample(1, seed=draw)[0].id for draw in range(10000))
        expected = 10000 / 5
        sigma = math.sqrt(10000 * 0.2 * 0.8)
        for item in items:
            assert abs(counts[item.id] - expected) <= 3 * sigma

    def test_sample_respects_exclude(self):
        """Test excluded ids never appear."""
        items = generated_features(6)
        pool = FeaturePool(items)
        excluded = {items[0].id, items[1].id}
        for seed in range(25):
            assert not {f.id for f in pool.sample(4, seed, exclude=excluded)} & excluded

    def test_sample_shortfall(self):
        """Test asking for more than available returns everything available."""
        pool = FeaturePool(generated_features(3))
        assert len(pool.sample(10, seed=1)) == 3
        assert pool.sample(0, seed=1) == []

    def test_sample_negative_rejected(self):
        """Test a negative sample size is an error."""
        with pytest.raises(ValueError):
            FeaturePool(generated_features(2)).sample(-1, seed=0)

    def test_increment_reward(self):
        """Test reward increments skip unknown ids."""
        items = generated_features(2)
        pool = FeaturePool(items)
        pool.increment_reward([items[0].id, items[0].id, "missing"])
        assert pool.get(items[0].id).reward == 2
        assert pool.get(items[1].id).reward == 0

    def test_membership_and_equality(self):
        """Test __contains__ and structural equality."""
        items = generated_features(3)
        assert items[1].id in FeaturePool(items)
        assert FeaturePool(items) == FeaturePool(items)
        assert FeaturePool(items) != FeaturePool(list(reversed(items)))


class TestNovelQueue:
    """Test the FIFO of coverage-increasing feature ids."""

    def test_fifo_order(self):
        """Test dequeue returns ids in enqueue order."""
        queue = NovelQueue(["a", "b", "c"])
        assert queue.dequeue(2) == ["a", "b"]
        assert queue.snapshot() == ["c"]

    def test_no_duplicates(self):
        """Test an id is present at most once."""
        queue = NovelQueue()
        assert queue.enqueue("a")
        assert not queue.enqueue("a")
        assert len(queue) == 1

    def test_dequeue_more_than_available(self):
        """Test dequeue takes min(count, len)."""
        queue = NovelQueue(["a"])
        assert queue.dequeue(5) == ["a"]
        assert queue.dequeue(1) == []

    def test_dequeued_id_can_return(self):
        """Test a dequeued id may be enqueued again."""
        queue = NovelQueue(["a"])
        queue.dequeue(1)
        assert queue.enqueue("a")

    def test_requeue_front_keeps_order(self):
        """Test requeued ids go back to the front in their original order."""
        queue = NovelQueue(["a", "b", "c", "d"])
        taken = queue.dequeue(2)
        queue.requeue_front(taken)
        assert queue.snapshot() == ["a", "b", "c", "d"]

    def test_cap_drops_new_ids(self):
        """Test a full bounded queue refuses new ids."""
        queue = NovelQueue(max_size=2)
        queue.enqueue("a")
        queue.enqueue("b")
        assert not queue.enqueue("c")
        assert queue.snapshot() == ["a", "b"]

    def test_negative_dequeue_rejected(self):
        """Test a negative count is an error."""
        with pytest.raises(ValueError):
            NovelQueue().dequeue(-1)
