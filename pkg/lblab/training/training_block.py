"""TrainingBlock that can be inherited from to make cached training blocks."""

from abc import abstractmethod
from typing import Any

from agogos.training import Trainer

from lblab.caching import CacheArgs, Cacher


class TrainingBlock(Trainer, Cacher):
    """Training block whose training output is cached under the block hash.

    Methods
    -------
    .. code-block:: python
        @abstractmethod
        def custom_train(self, x: Any, y: Any, **train_args) -> Any: # Custom training implementation, returns the training output

        @abstractmethod
        def custom_predict(self, x: Any, **pred_args) -> Any: # Custom prediction implementation

        def train(self, x: Any, y: Any, cache_args: CacheArgs | None = None, **train_args: Any) -> tuple[Any, Any]: # Applies caching and calls custom_train

        def predict(self, x: Any, cache_args: CacheArgs | None = None, **pred_args: Any) -> Any: # Applies caching and calls custom_predict

    Usage:
    .. code-block:: python
        from lblab.training import TrainingBlock

        class CustomTrainingBlock(TrainingBlock):
            def custom_train(self, x: Any, y: Any) -> Any:
                return x

            def custom_predict(self, x: Any) -> Any:
                return x

        output, y = CustomTrainingBlock().train(x, y, cache_args={"storage_type": ".pkl", "storage_path": "cache"})
    """

    def train(self, x: Any, y: Any, cache_args: CacheArgs | None = None, **train_args: Any) -> tuple[Any, Any]:  # noqa: ANN401
        """Train, or load the output of an identical earlier training from the cache.

        :param x: The input data.
        :param y: The target data.
        :param cache_args: The cache arguments.
        :return: The training output and the targets.
        """
        name = self.get_hash() + "t"
        if cache_args and self.cache_exists(name=name, cache_args=cache_args):
            self.log_to_terminal(f"Cache exists for {self.__class__.__name__} with hash: {self.get_hash()}. Using the cache.")
            return self._get_cache(name=name, cache_args=cache_args), y

        output = self.custom_train(x, y, **train_args)

        if cache_args:
            self.log_to_terminal(f"Storing training output cache to {cache_args['storage_path']}")
            self._store_cache(name=name, data=output, cache_args=cache_args)

        return output, y

    @abstractmethod
    def custom_train(self, x: Any, y: Any, **train_args: Any) -> Any:  # noqa: ANN401
        """Train the model.

        :param x: The input data.
        :param y: The target data.
        :return: The training output.
        """
        raise NotImplementedError(f"Custom train method not implemented for {self.__class__}")

    def predict(self, x: Any, cache_args: CacheArgs | None = None, **pred_args: Any) -> Any:  # noqa: ANN401
        """Predict using the model.

        :param x: The input data.
        :param cache_args: The cache arguments.
        :return: The predicted data.
        """
        name = self.get_hash() + "p"
        if cache_args and self.cache_exists(name=name, cache_args=cache_args):
            return self._get_cache(name=name, cache_args=cache_args)

        x = self.custom_predict(x, **pred_args)

        if cache_args:
            self.log_to_terminal(f"Storing prediction cache to {cache_args['storage_path']}")
            self._store_cache(name=name, data=x, cache_args=cache_args)

        return x

    @abstractmethod
    def custom_predict(self, x: Any, **pred_args: Any) -> Any:  # noqa: ANN401
        """Predict using the model.

        :param x: The input data.
        :return: The predicted data.
        """
        raise NotImplementedError(f"Custom predict method not implemented for {self.__class__}")
